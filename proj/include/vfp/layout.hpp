#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "vfp/correlation.hpp"
#include "vfp/matrix.hpp"
#include "vfp/tensor.hpp"

namespace vfp {

struct GridDims {
  std::size_t rows = 1;
  std::size_t cols = 1;

  std::size_t cells() const noexcept { return rows * cols; }
  bool operator==(const GridDims&) const = default;
};

struct Cell {
  std::size_t row = 0;
  std::size_t col = 0;
  bool operator==(const Cell&) const = default;
};

// Smallest near-square grid holding k attributes: rows = ceil(sqrt(k)),
// cols = ceil(k / rows).
GridDims derive_dims(std::size_t k);

// Start cell of the spiral: (floor((rows-1)/2), floor((cols-1)/2)).
Cell spiral_center(GridDims dims);

// Chebyshev distance between two cells.
std::size_t ring(Cell cell, Cell center) noexcept;

// Clockwise square spiral from spiral_center(): right, down, left, up with
// run lengths 1, 1, 2, 2, 3, 3, ... Lattice points outside the grid are
// skipped; the result lists every grid cell exactly once.
std::vector<Cell> vortex_cells(GridDims dims);

struct VortexLayout {
  GridDims dims;
  std::vector<Cell> cell_of_rank;  // all dims.cells() cells; ranks >= k are padding
  std::size_t k = 0;

  static VortexLayout for_attributes(std::size_t k);
  static VortexLayout for_dims(GridDims dims, std::size_t k);
};

using FeatureGrid = Matrix<double>;

// grid[cell_of_rank[t]] = sample[profile.order[t]] for t < k, 0 elsewhere.
FeatureGrid place(const CorrelationProfile& profile, std::span<const double> sample,
                  const VortexLayout& layout);
FeatureGrid place(const CorrelationProfile& profile, std::span<const double> sample, GridDims dims);

enum class Strategy { None, Zpos1, Zpos2, Distancing };

inline constexpr Strategy kAllStrategies[] = {Strategy::None, Strategy::Zpos1, Strategy::Zpos2,
                                              Strategy::Distancing};

const char* to_string(Strategy s) noexcept;
Strategy parse_strategy(std::string_view text);

struct ImageSize {
  std::size_t height = 0;
  std::size_t width = 0;
  bool operator==(const ImageSize&) const = default;
};

// none: m x n; zpos1: (m+2) x (n+2); zpos2: (m+4) x (n+4);
// distancing: (2m+1) x (2n+1).
ImageSize image_size(Strategy s, GridDims dims) noexcept;

// Pixel holding grid cell (i, j): (i, j), (i+1, j+1), (i+2, j+2) or
// (2i+1, 2j+1) respectively.
Cell pixel_of(Strategy s, Cell grid_cell) noexcept;

struct EmbeddedImage {
  Matrix<double> values;
  Matrix<std::uint8_t> occupancy;  // 1 = feature pixel
  Strategy strategy = Strategy::None;
  GridDims source_dims;
};

EmbeddedImage embed(const FeatureGrid& grid, Strategy s);

// Occupancy mask alone, for analysis that does not need pixel values.
Matrix<std::uint8_t> occupancy_mask(Strategy s, GridDims dims);

// Replicates the grayscale plane into three identical float channels.
Tensor to_three_channels(const EmbeddedImage& img);

}  // namespace vfp
