#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vfp/correlation.hpp"
#include "vfp/layout.hpp"
#include "vfp/tabular.hpp"

namespace vfp {

struct ManifestEntry {
  std::size_t sample_id = 0;
  std::string label;
  std::string split;        // "train" or "test"
  std::string tensor_path;  // relative to the manifest's directory
  std::string png_path;     // empty when previews were not written

  bool operator==(const ManifestEntry&) const = default;
};

struct ManifestHeader {
  Strategy strategy = Strategy::Distancing;
  Direction direction = Direction::Ascending;
  GridDims dims;
  std::size_t k = 0;
  ImageSize image;
  std::uint64_t seed = 0;
  double ratio = 0.8;
  std::string corr_scope = "train";
  std::string scaler_file;  // per-column min/max table, relative path

  bool operator==(const ManifestHeader&) const = default;
};

// manifest.csv: "# key=value" header lines, then
// sample_id,label,split,tensor_path,png_path with one row per sample.
struct DatasetManifest {
  ManifestHeader header;
  std::vector<ManifestEntry> entries;

  const ManifestEntry* find(std::size_t sample_id) const;
};

inline constexpr std::string_view kManifestFile = "manifest.csv";
inline constexpr std::string_view kScalerFile = "scaler.csv";

std::string format_manifest(const DatasetManifest& m);
DatasetManifest parse_manifest(std::string_view text);

// Accepts the manifest file itself or the directory holding manifest.csv.
// Throws NotFound when it does not exist, FormatError when it is malformed.
DatasetManifest read_manifest(const std::filesystem::path& path);
std::filesystem::path manifest_directory(const std::filesystem::path& path);

struct EmitOptions {
  Strategy strategy = Strategy::Distancing;
  bool emit_png = false;
  unsigned jobs = 1;
  std::string corr_scope = "train";
  std::vector<ColumnRange> scaler;  // written to scaler.csv when non-empty
};

// Embeds every sample of a scaled dataset and writes
// tensors/sample_{id}.vfpt (plus png/sample_{id}.png), scaler.csv and
// manifest.csv under out_dir. Throws InconsistentInputs when the dataset,
// profile, layout and split disagree.
DatasetManifest emit_dataset(const TabularDataset& ds, const CorrelationProfile& profile,
                             const VortexLayout& layout, const SplitAssignment& split,
                             const EmitOptions& options, const std::filesystem::path& out_dir);

// Converts one scaled sample to its 3-channel tensor.
Tensor convert_sample(std::span<const double> sample, const CorrelationProfile& profile,
                      const VortexLayout& layout, Strategy strategy);

struct OutputCheck {
  std::size_t tensors_checked = 0;
  std::vector<std::string> problems;
  bool ok() const noexcept { return problems.empty(); }
};

// Re-reads every tensor listed in a manifest: the file must exist and parse,
// its shape must match the header, and its three channels must be identical.
OutputCheck verify_output(const std::filesystem::path& manifest_path);

// Tabular side outputs of a conversion run.
std::string format_split_manifest(const SplitAssignment& split, std::size_t n_samples);
std::string format_scores(const CorrelationProfile& profile, std::span<const std::string> names);
std::string format_scaler(std::span<const ColumnRange> ranges, std::span<const std::string> names);

struct LayoutRow {
  Strategy strategy = Strategy::None;
  std::size_t rank = 0;
  std::size_t column = 0;
  std::string column_name;
  double score = 0.0;
  Cell grid;
  Cell pixel;
};

std::vector<LayoutRow> layout_rows(const CorrelationProfile& profile,
                                   std::span<const std::string> names, const VortexLayout& layout,
                                   std::span<const Strategy> strategies);
// strategy,rank,column_name,score,grid_row,grid_col,pixel_row,pixel_col
std::string format_layout_report(std::span<const LayoutRow> rows);
std::vector<LayoutRow> parse_layout_report(std::string_view text);

// Shortest round-trip decimal text for a double.
std::string format_real(double v);

}  // namespace vfp
