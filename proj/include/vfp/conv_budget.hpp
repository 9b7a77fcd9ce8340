#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "vfp/layout.hpp"

namespace vfp {

// Number of features a 3x3 window can cover under the four embeddings.
inline constexpr int kCoverageKeys[] = {1, 2, 3, 4, 6, 9};

// How many 3x3 valid-convolution window positions cover exactly i feature
// pixels, for each i in kCoverageKeys. Every key is present (zero when the
// case does not occur).
struct ConvBudget {
  Strategy strategy = Strategy::None;
  GridDims dims;
  std::map<int, std::int64_t> counts;
  std::int64_t total = 0;
  // Brute force only: window coverages outside kCoverageKeys. A correct
  // geometry never produces any.
  std::map<int, std::int64_t> unexpected;

  std::int64_t count(int features) const;
  bool operator==(const ConvBudget&) const = default;
};

// Closed-form counts. Requires rows, cols >= 2 for the padded/distanced
// embeddings and >= 3 for none; throws UnsupportedDims otherwise.
ConvBudget closed_form(Strategy s, GridDims dims);

// Exhaustive oracle: builds the occupancy mask, slides a 3x3 window over
// every valid position and histograms the covered feature pixels. Throws
// ImageTooSmall when the image is narrower than 3 pixels.
ConvBudget brute_force(Strategy s, GridDims dims);

bool closed_form_supported(Strategy s, GridDims dims) noexcept;

// Symbolic formula for N_features, or "N/A". features == 0 gives the total.
const char* budget_formula(Strategy s, int features) noexcept;

struct BudgetRow {
  GridDims dims;
  Strategy strategy = Strategy::None;
  ImageSize image;
  ConvBudget closed;
  ConvBudget brute;

  bool agree() const { return closed.counts == brute.counts && closed.total == brute.total &&
                              brute.unexpected.empty(); }
};

struct BudgetReport {
  std::vector<BudgetRow> rows;
  bool all_agree() const;
};

// Throws InvalidArgument on empty input; UnsupportedDims/ImageTooSmall
// propagate from the per-row computations.
BudgetReport budget_report(std::span<const GridDims> dims, std::span<const Strategy> strategies);

// Aligned text rendition, one block per grid size, disagreements starred.
std::string format_table(const BudgetReport& report);

// m,n,strategy,features,formula,closed_form,brute_force,agree
std::string format_csv(const BudgetReport& report);

}  // namespace vfp
