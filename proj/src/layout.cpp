#include "vfp/layout.hpp"

#include <algorithm>
#include <string>

#include "vfp/error.hpp"

namespace vfp {

namespace {

std::size_t ceil_sqrt(std::size_t k) {
  std::size_t r = 0;
  while (r * r < k) ++r;
  return r;
}

}  // namespace

GridDims derive_dims(std::size_t k) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "derive_dims: need at least one attribute");
  const std::size_t rows = ceil_sqrt(k);
  return {rows, (k + rows - 1) / rows};
}

Cell spiral_center(GridDims dims) { return {(dims.rows - 1) / 2, (dims.cols - 1) / 2}; }

std::size_t ring(Cell cell, Cell center) noexcept {
  const auto dr = cell.row > center.row ? cell.row - center.row : center.row - cell.row;
  const auto dc = cell.col > center.col ? cell.col - center.col : center.col - cell.col;
  return std::max(dr, dc);
}

std::vector<Cell> vortex_cells(GridDims dims) {
  if (dims.rows == 0 || dims.cols == 0) {
    throw Error(ErrorCode::InvalidArgument, "vortex_cells: grid dimensions must be positive");
  }
  const std::size_t total = dims.cells();
  const Cell c0 = spiral_center(dims);
  const auto rows = static_cast<long long>(dims.rows);
  const auto cols = static_cast<long long>(dims.cols);

  std::vector<Cell> cells;
  cells.reserve(total);
  long long r = static_cast<long long>(c0.row);
  long long c = static_cast<long long>(c0.col);
  cells.push_back(c0);

  // right, down, left, up
  constexpr long long dr[4] = {0, 1, 0, -1};
  constexpr long long dc[4] = {1, 0, -1, 0};
  std::size_t dir = 0;
  for (long long run = 1; cells.size() < total; ++run) {
    for (int leg = 0; leg < 2 && cells.size() < total; ++leg) {
      for (long long step = 0; step < run && cells.size() < total; ++step) {
        r += dr[dir];
        c += dc[dir];
        if (r >= 0 && r < rows && c >= 0 && c < cols) {
          cells.push_back({static_cast<std::size_t>(r), static_cast<std::size_t>(c)});
        }
      }
      dir = (dir + 1) % 4;
    }
  }
  return cells;
}

VortexLayout VortexLayout::for_dims(GridDims dims, std::size_t k) {
  if (k == 0 || k > dims.cells()) {
    throw Error(ErrorCode::InvalidArgument, "layout: " + std::to_string(k) +
                                                " attributes do not fit a " +
                                                std::to_string(dims.rows) + "x" +
                                                std::to_string(dims.cols) + " grid");
  }
  return {dims, vortex_cells(dims), k};
}

VortexLayout VortexLayout::for_attributes(std::size_t k) { return for_dims(derive_dims(k), k); }

FeatureGrid place(const CorrelationProfile& profile, std::span<const double> sample,
                  const VortexLayout& layout) {
  if (sample.size() != layout.k || profile.order.size() != layout.k) {
    throw Error(ErrorCode::LengthMismatch,
                "place: sample has " + std::to_string(sample.size()) + " values, profile ranks " +
                    std::to_string(profile.order.size()) + ", layout expects " +
                    std::to_string(layout.k));
  }
  FeatureGrid grid(layout.dims.rows, layout.dims.cols, 0.0);
  for (std::size_t t = 0; t < layout.k; ++t) {
    const Cell cell = layout.cell_of_rank[t];
    grid(cell.row, cell.col) = sample[profile.order[t]];
  }
  return grid;
}

FeatureGrid place(const CorrelationProfile& profile, std::span<const double> sample, GridDims dims) {
  if (sample.size() > dims.cells()) {
    throw Error(ErrorCode::LengthMismatch, "place: sample longer than the grid");
  }
  return place(profile, sample, VortexLayout::for_dims(dims, sample.size()));
}

const char* to_string(Strategy s) noexcept {
  switch (s) {
    case Strategy::None: return "none";
    case Strategy::Zpos1: return "zpos1";
    case Strategy::Zpos2: return "zpos2";
    case Strategy::Distancing: return "distancing";
  }
  return "unknown";
}

Strategy parse_strategy(std::string_view text) {
  for (Strategy s : kAllStrategies) {
    if (text == to_string(s)) return s;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown strategy '" + std::string(text) + "'");
}

ImageSize image_size(Strategy s, GridDims d) noexcept {
  switch (s) {
    case Strategy::None: return {d.rows, d.cols};
    case Strategy::Zpos1: return {d.rows + 2, d.cols + 2};
    case Strategy::Zpos2: return {d.rows + 4, d.cols + 4};
    case Strategy::Distancing: return {2 * d.rows + 1, 2 * d.cols + 1};
  }
  return {};
}

Cell pixel_of(Strategy s, Cell g) noexcept {
  switch (s) {
    case Strategy::None: return g;
    case Strategy::Zpos1: return {g.row + 1, g.col + 1};
    case Strategy::Zpos2: return {g.row + 2, g.col + 2};
    case Strategy::Distancing: return {2 * g.row + 1, 2 * g.col + 1};
  }
  return g;
}

Matrix<std::uint8_t> occupancy_mask(Strategy s, GridDims dims) {
  const ImageSize size = image_size(s, dims);
  Matrix<std::uint8_t> mask(size.height, size.width, 0);
  for (std::size_t i = 0; i < dims.rows; ++i) {
    for (std::size_t j = 0; j < dims.cols; ++j) {
      const Cell p = pixel_of(s, {i, j});
      mask(p.row, p.col) = 1;
    }
  }
  return mask;
}

EmbeddedImage embed(const FeatureGrid& grid, Strategy s) {
  if (grid.rows() == 0 || grid.cols() == 0) {
    throw Error(ErrorCode::InvalidArgument, "embed: empty feature grid");
  }
  const GridDims dims{grid.rows(), grid.cols()};
  const ImageSize size = image_size(s, dims);
  EmbeddedImage img;
  img.values = Matrix<double>(size.height, size.width, 0.0);
  img.occupancy = occupancy_mask(s, dims);
  img.strategy = s;
  img.source_dims = dims;
  for (std::size_t i = 0; i < dims.rows; ++i) {
    for (std::size_t j = 0; j < dims.cols; ++j) {
      const Cell p = pixel_of(s, {i, j});
      img.values(p.row, p.col) = grid(i, j);
    }
  }
  return img;
}

Tensor to_three_channels(const EmbeddedImage& img) {
  Tensor t(3, static_cast<std::uint32_t>(img.values.rows()),
           static_cast<std::uint32_t>(img.values.cols()));
  for (std::uint32_t c = 0; c < 3; ++c) {
    for (std::uint32_t y = 0; y < t.height; ++y) {
      for (std::uint32_t x = 0; x < t.width; ++x) {
        t.at(c, y, x) = static_cast<float>(img.values(y, x));
      }
    }
  }
  return t;
}

}  // namespace vfp
