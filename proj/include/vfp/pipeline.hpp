#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>

#include "vfp/correlation.hpp"
#include "vfp/emit.hpp"
#include "vfp/layout.hpp"
#include "vfp/parallel.hpp"
#include "vfp/tabular.hpp"

namespace vfp {

// Which rows feed the correlation scores. Train is the leakage-safe default.
enum class CorrScope { Train, Full };

const char* to_string(CorrScope s) noexcept;
CorrScope parse_corr_scope(std::string_view text);

struct RunConfig {
  std::filesystem::path input_path;
  std::string label_column;
  Strategy strategy = Strategy::Distancing;
  Direction direction = Direction::Ascending;
  double ratio = 0.8;
  std::uint64_t seed = 1000;
  std::filesystem::path out_dir;
  bool emit_png = false;
  std::set<std::string> missing_tokens = default_missing_tokens();
  CorrScope corr_scope = CorrScope::Train;
  unsigned jobs = default_jobs();

  void validate() const;
};

// Everything up to (not including) emission:
// load -> split -> impute -> scale -> correlate -> rank -> layout.
struct PreparedData {
  TabularDataset scaled;
  SplitAssignment split;
  MinMaxScaler scaler;
  CorrelationProfile profile;
  VortexLayout layout;
};

PreparedData prepare(const RunConfig& cfg);

struct ConvertSummary {
  std::size_t k = 0;
  GridDims dims;
  ImageSize image;
  std::size_t written = 0;
  std::size_t n_train = 0;
  std::size_t n_test = 0;
};

inline constexpr std::string_view kSplitFile = "split.csv";
inline constexpr std::string_view kScoresFile = "scores.csv";
inline constexpr std::string_view kLayoutFile = "layout.csv";

// Runs prepare() and writes split.csv, scores.csv, layout.csv, the tensors
// and manifest.csv under cfg.out_dir.
ConvertSummary run_convert(const RunConfig& cfg);

}  // namespace vfp
