#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace vfp {

// Column-major table. columns[a][s] is attribute a of sample s and
// missing_mask has the same shape. Missing cells hold 0 until imputed.
struct TabularDataset {
  std::vector<std::vector<double>> columns;
  std::vector<std::string> column_names;
  std::vector<std::string> labels;
  std::vector<std::vector<bool>> missing_mask;

  std::size_t n_samples() const noexcept { return labels.size(); }
  std::size_t n_attributes() const noexcept { return columns.size(); }
  bool has_missing() const noexcept;

  // Row view of one sample, in original column order.
  std::vector<double> sample(std::size_t index) const;
};

struct SplitAssignment {
  std::vector<std::size_t> train_indices;  // shuffled order
  std::vector<std::size_t> test_indices;   // shuffled order
  std::uint64_t seed = 0;
  double ratio = 0.8;

  // Per-sample membership flags, indexed by sample id.
  std::vector<bool> train_mask(std::size_t n_samples) const;
};

const std::set<std::string>& default_missing_tokens();

TabularDataset load_csv(const std::filesystem::path& path, std::string_view label_column,
                        const std::set<std::string>& missing_tokens = default_missing_tokens());

// Same as load_csv over an in-memory document.
TabularDataset parse_csv_dataset(std::string_view text, std::string_view label_column,
                                 const std::set<std::string>& missing_tokens = default_missing_tokens());

// Seeded SplitMix64 Fisher-Yates shuffle of 0..n-1; the first
// round(ratio * n) shuffled indices are train, the rest test.
SplitAssignment split(const TabularDataset& ds, double ratio, std::uint64_t seed);
SplitAssignment split(std::size_t n_samples, double ratio, std::uint64_t seed);

// Throws InconsistentInputs unless split partitions 0..n-1 exactly.
void validate_split(const SplitAssignment& split, std::size_t n_samples);

// Replaces each missing cell with the mean of the present training values in
// its column (0 when the column has none) and clears the mask.
TabularDataset impute_missing(const TabularDataset& ds, const SplitAssignment& split);

struct ColumnRange {
  double min = 0.0;
  double max = 0.0;
  bool constant() const noexcept { return !(max > min); }
};

// Min-max scaler fitted on the training rows only. Constant training columns
// map to 0.5; everything is clamped into [0, 1].
class MinMaxScaler {
 public:
  static MinMaxScaler fit(const TabularDataset& ds, const SplitAssignment& split);

  TabularDataset apply(const TabularDataset& ds) const;
  double scale(std::size_t column, double value) const;

  const std::vector<ColumnRange>& ranges() const noexcept { return ranges_; }

 private:
  std::vector<ColumnRange> ranges_;
};

TabularDataset min_max_scale(const TabularDataset& ds, const SplitAssignment& split);

// Restricts a dataset to the given sample ids, in that order.
TabularDataset select_rows(const TabularDataset& ds, const std::vector<std::size_t>& rows);

}  // namespace vfp
