#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "support.hpp"
#include "vfp/correlation.hpp"
#include "vfp/error.hpp"
#include "vfp/tabular.hpp"

using namespace vfp;

namespace {

TabularDataset table(std::vector<std::vector<double>> columns) {
  TabularDataset ds;
  const std::size_t n = columns.front().size();
  for (std::size_t c = 0; c < columns.size(); ++c) {
    ds.column_names.push_back("c" + std::to_string(c));
    ds.missing_mask.emplace_back(n, false);
  }
  ds.columns = std::move(columns);
  ds.labels.assign(n, "l");
  return ds;
}

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = U(rng);
  return v;
}

}  // namespace

TEST_CASE("pearson on exact cases") {
  const std::vector<double> a{1, 2, 3};
  const std::vector<double> rev{3, 2, 1};
  CHECK(pearson(a, a) == 1.0);
  CHECK(pearson(a, rev) == -1.0);
  // Exact rational value 4/5, checked against a fraction computation.
  const std::vector<double> x{1, 2, 3, 4};
  const std::vector<double> y{1, 3, 2, 4};
  CHECK(std::fabs(pearson(x, y) - 0.8) <= 1e-12);
  CHECK(std::fabs(static_cast<double>(test::pearson_oracle(x, y)) - 0.8) <= 1e-12);
}

TEST_CASE("pearson conventions and errors") {
  const std::vector<double> constant{2, 2, 2};
  const std::vector<double> a{1, 2, 3};
  CHECK(pearson(constant, a) == 0.0);
  CHECK(pearson(a, constant) == 0.0);
  try {
    pearson(a, std::vector<double>{1, 2});
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::LengthMismatch);
  }
  CHECK_THROWS_AS(pearson(std::vector<double>{1}, std::vector<double>{1}), Error);
}

TEST_CASE("property: symmetry, bound, self-correlation, affine invariance") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> alpha_dist(-5.0, 5.0);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + rng() % 50;
    const auto a = random_vector(rng, n);
    const auto b = random_vector(rng, n);
    const double r = pearson(a, b);
    CHECK(pearson(b, a) == r);
    CHECK(std::fabs(r) <= 1.0 + 1e-12);
    CHECK(pearson(a, a) == 1.0);

    double alpha = alpha_dist(rng);
    if (std::fabs(alpha) < 1e-3) alpha = 1.0;
    const double beta = alpha_dist(rng);
    std::vector<double> shifted(n);
    for (std::size_t i = 0; i < n; ++i) shifted[i] = alpha * a[i] + beta;
    const double expected = (alpha > 0 ? 1.0 : -1.0) * r;
    CHECK(std::fabs(pearson(shifted, b) - expected) <= 1e-12);
  }
}

TEST_CASE("correlation_scores special cases") {
  CHECK(correlation_scores(table({{0.1, 0.5, 0.9}})) == std::vector<double>{1.0});
  CHECK(correlation_scores(table({{0.1, 0.5, 0.9}, {0.1, 0.5, 0.9}})) ==
        std::vector<double>{2.0, 2.0});
  // A constant column still carries its self term.
  const auto s = correlation_scores(table({{0.5, 0.5, 0.5}, {0.1, 0.2, 0.9}}));
  CHECK(s == std::vector<double>{1.0, 1.0});
}

TEST_CASE("correlation_scores restricted to rows") {
  // Rows 0..2 are perfectly correlated; row 3 breaks it.
  const auto ds = table({{0.0, 0.5, 1.0, 0.0}, {0.0, 0.5, 1.0, 1.0}});
  const auto sub = correlation_scores(ds, std::vector<std::size_t>{0, 1, 2});
  CHECK(sub == std::vector<double>{2.0, 2.0});
  const auto full = correlation_scores(ds);
  CHECK(full[0] < 2.0);
}

TEST_CASE("correlation_scores matches the direct oracle") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::vector<double>> cols;
    for (int c = 0; c < 10; ++c) cols.push_back(random_vector(rng, 20));
    const auto got = correlation_scores(table(cols), 1 + trial % 4);
    const auto want = test::scores_oracle(cols);
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(std::fabs(got[i] - static_cast<double>(want[i])) <= 1e-12);
      CHECK(got[i] >= 1.0);
      CHECK(got[i] <= 10.0 + 1e-12);
    }
  }
}

TEST_CASE("correlation_scores is independent of thread count") {
  std::mt19937_64 rng(3);
  std::vector<std::vector<double>> cols;
  for (int c = 0; c < 37; ++c) cols.push_back(random_vector(rng, 200));
  const auto ds = table(cols);
  const auto one = correlation_scores(ds, 1);
  CHECK(correlation_scores(ds, 3) == one);
  CHECK(correlation_scores(ds, 8) == one);
}

TEST_CASE("iris train split scores match the oracle") {
  const auto raw = load_csv(test::data_dir() / "iris.csv", "species");
  const auto s = split(raw, 0.8, 1000);
  const auto scaled = min_max_scale(impute_missing(raw, s), s);
  const auto got = correlation_scores(scaled, s.train_indices);
  std::vector<std::vector<double>> train_cols;
  for (const auto& col : scaled.columns) {
    std::vector<double> picked;
    for (auto i : s.train_indices) picked.push_back(col[i]);
    train_cols.push_back(picked);
  }
  const auto want = test::scores_oracle(train_cols);
  for (std::size_t i = 0; i < got.size(); ++i) {
    CHECK(std::fabs(got[i] - static_cast<double>(want[i])) <= 1e-12);
  }
}

TEST_CASE("rank ordering rules") {
  const std::vector<double> c{3, 1, 2};
  CHECK(rank(c, Direction::Ascending) == std::vector<std::size_t>{1, 2, 0});
  CHECK(rank(c, Direction::Descending) == std::vector<std::size_t>{0, 2, 1});
  const std::vector<double> ties{5, 5, 5};
  CHECK(rank(ties, Direction::Ascending) == std::vector<std::size_t>{0, 1, 2});
  CHECK(rank(ties, Direction::Descending) == std::vector<std::size_t>{0, 1, 2});
  const std::vector<double> mixed{2, 1, 2, 1};
  CHECK(rank(mixed, Direction::Ascending) == std::vector<std::size_t>{1, 3, 0, 2});
  CHECK(rank(mixed, Direction::Descending) == std::vector<std::size_t>{0, 2, 1, 3});
}

TEST_CASE("rank rejects bad input") {
  const std::vector<double> bad{1.0, std::nan("")};
  try {
    rank(bad, Direction::Ascending);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonFiniteScore);
  }
  CHECK_THROWS_AS(rank(std::vector<double>{}, Direction::Ascending), Error);
}

TEST_CASE("property: distinct scores give reversed orders") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    auto c = random_vector(rng, 1 + rng() % 30);
    auto asc = rank(c, Direction::Ascending);
    auto desc = rank(c, Direction::Descending);
    std::reverse(desc.begin(), desc.end());
    CHECK(asc == desc);
    for (std::size_t t = 1; t < asc.size(); ++t) CHECK(c[asc[t - 1]] <= c[asc[t]]);
    // Positive rescaling leaves the permutation unchanged.
    for (auto& v : c) v *= 3.5;
    CHECK(rank(c, Direction::Ascending) == asc);
  }
}
