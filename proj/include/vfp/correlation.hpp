#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "vfp/tabular.hpp"

namespace vfp {

enum class Direction { Ascending, Descending };

const char* to_string(Direction d) noexcept;
Direction parse_direction(std::string_view text);

// Pearson correlation coefficient of two equal-length vectors (length >= 2).
// Returns 0 when either side has zero variance. Symmetric in its arguments
// bit for bit, and exactly 1 for r(x, x) with non-constant x.
double pearson(std::span<const double> a, std::span<const double> b);

// c_i = sum over all j of |r(x_i, x_j)|. The j = i term is always 1, so every
// score lies in [1, k]. Rows outside `rows` are ignored when rows is given.
std::vector<double> correlation_scores(const TabularDataset& ds, unsigned jobs = 1);
std::vector<double> correlation_scores(const TabularDataset& ds,
                                       const std::vector<std::size_t>& rows, unsigned jobs = 1);

// Stable ordering of attribute indices by score. Ties keep ascending column
// index in both directions; descending is not the reverse of ascending when
// ties exist.
std::vector<std::size_t> rank(std::span<const double> scores, Direction direction);

struct CorrelationProfile {
  std::vector<double> scores;
  std::vector<std::size_t> order;  // order[t] = attribute placed at rank t
  Direction direction = Direction::Ascending;
};

CorrelationProfile make_profile(std::vector<double> scores, Direction direction);

}  // namespace vfp
