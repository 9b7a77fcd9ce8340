#include "vfp/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "vfp/error.hpp"
#include "vfp/numeric.hpp"
#include "vfp/parallel.hpp"

namespace vfp {

namespace {

struct Centered {
  std::vector<double> deviations;
  double sum_squares = 0.0;
};

Centered center(std::span<const double> x) {
  CompensatedSum sum;
  for (double v : x) sum.add(v);
  const double mean = sum.value() / static_cast<double>(x.size());
  Centered c;
  c.deviations.reserve(x.size());
  CompensatedSum ss;
  for (double v : x) {
    const double d = v - mean;
    c.deviations.push_back(d);
    ss.add(d * d);
  }
  c.sum_squares = ss.value();
  return c;
}

// Shared by pearson() and correlation_scores() so both produce identical bits.
double correlate(const Centered& a, const Centered& b) {
  if (!(a.sum_squares > 0.0) || !(b.sum_squares > 0.0)) return 0.0;
  CompensatedSum cross;
  for (std::size_t i = 0; i < a.deviations.size(); ++i) {
    cross.add(a.deviations[i] * b.deviations[i]);
  }
  double denom = std::sqrt(a.sum_squares * b.sum_squares);
  if (!(denom > 0.0) || !std::isfinite(denom)) {
    denom = std::sqrt(a.sum_squares) * std::sqrt(b.sum_squares);
  }
  return std::clamp(cross.value() / denom, -1.0, 1.0);
}

}  // namespace

const char* to_string(Direction d) noexcept {
  return d == Direction::Ascending ? "ascending" : "descending";
}

Direction parse_direction(std::string_view text) {
  if (text == "ascending") return Direction::Ascending;
  if (text == "descending") return Direction::Descending;
  throw Error(ErrorCode::InvalidArgument, "unknown direction '" + std::string(text) + "'");
}

double pearson(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::LengthMismatch, "pearson: vectors of length " + std::to_string(a.size()) +
                                               " and " + std::to_string(b.size()));
  }
  if (a.size() < 2) throw Error(ErrorCode::InvalidArgument, "pearson: need at least two values");
  return correlate(center(a), center(b));
}

std::vector<double> correlation_scores(const TabularDataset& ds,
                                       const std::vector<std::size_t>& rows, unsigned jobs) {
  if (ds.has_missing()) {
    throw Error(ErrorCode::InvalidArgument, "correlation requires imputed data");
  }
  if (rows.size() < 2) throw Error(ErrorCode::InvalidArgument, "correlation needs two or more rows");
  const std::size_t k = ds.n_attributes();

  std::vector<Centered> centered(k);
  parallel_for(k, jobs, [&](std::size_t a) {
    std::vector<double> picked;
    picked.reserve(rows.size());
    for (auto r : rows) picked.push_back(ds.columns[a].at(r));
    centered[a] = center(picked);
  });

  std::vector<double> r(k * k, 0.0);
  parallel_for(k, jobs, [&](std::size_t i) {
    r[i * k + i] = 1.0;
    for (std::size_t j = i + 1; j < k; ++j) {
      const double v = correlate(centered[i], centered[j]);
      r[i * k + j] = v;
      r[j * k + i] = v;
    }
  });

  std::vector<double> scores(k);
  parallel_for(k, jobs, [&](std::size_t i) {
    CompensatedSum c;
    for (std::size_t j = 0; j < k; ++j) c.add(std::fabs(r[i * k + j]));
    scores[i] = c.value();
  });
  return scores;
}

std::vector<double> correlation_scores(const TabularDataset& ds, unsigned jobs) {
  std::vector<std::size_t> rows(ds.n_samples());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return correlation_scores(ds, rows, jobs);
}

std::vector<std::size_t> rank(std::span<const double> scores, Direction direction) {
  if (scores.empty()) throw Error(ErrorCode::InvalidArgument, "rank: empty score vector");
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!std::isfinite(scores[i])) {
      throw Error(ErrorCode::NonFiniteScore, "rank: score " + std::to_string(i) + " is not finite");
    }
  }
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (direction == Direction::Ascending) {
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  } else {
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  }
  return order;
}

CorrelationProfile make_profile(std::vector<double> scores, Direction direction) {
  CorrelationProfile p;
  p.order = rank(scores, direction);
  p.scores = std::move(scores);
  p.direction = direction;
  return p;
}

}  // namespace vfp
