#include "vfp/tabular.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "vfp/csv.hpp"
#include "vfp/error.hpp"
#include "vfp/numeric.hpp"
#include "vfp/random.hpp"

namespace vfp {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

bool parse_real(std::string_view text, double& out) {
  text = trim(text);
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

bool is_blank_record(const csv::Record& r) { return r.size() == 1 && r.front().empty(); }

}  // namespace

bool TabularDataset::has_missing() const noexcept {
  for (const auto& col : missing_mask) {
    if (std::find(col.begin(), col.end(), true) != col.end()) return true;
  }
  return false;
}

std::vector<double> TabularDataset::sample(std::size_t index) const {
  std::vector<double> row;
  row.reserve(columns.size());
  for (const auto& col : columns) row.push_back(col.at(index));
  return row;
}

std::vector<bool> SplitAssignment::train_mask(std::size_t n_samples) const {
  std::vector<bool> mask(n_samples, false);
  for (auto i : train_indices) mask.at(i) = true;
  return mask;
}

const std::set<std::string>& default_missing_tokens() {
  static const std::set<std::string> tokens{"", "NA", "NaN"};
  return tokens;
}

TabularDataset parse_csv_dataset(std::string_view text, std::string_view label_column,
                                 const std::set<std::string>& missing_tokens) {
  auto records = csv::parse(text);
  if (records.empty()) throw Error(ErrorCode::ParseError, "CSV input has no header row");

  const auto& header = records.front();
  const auto label_it = std::find(header.begin(), header.end(), label_column);
  if (label_it == header.end()) {
    throw Error(ErrorCode::MissingLabelColumn,
                "label column '" + std::string(label_column) + "' not found in header");
  }
  const auto label_index = static_cast<std::size_t>(label_it - header.begin());

  TabularDataset ds;
  std::vector<std::size_t> attribute_fields;
  for (std::size_t f = 0; f < header.size(); ++f) {
    if (f == label_index) continue;
    attribute_fields.push_back(f);
    ds.column_names.push_back(header[f]);
  }
  ds.columns.resize(attribute_fields.size());
  ds.missing_mask.resize(attribute_fields.size());

  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (is_blank_record(rec) && header.size() > 1) continue;
    const std::size_t row_number = r + 1;
    if (rec.size() != header.size()) {
      throw ParseError(row_number, std::min(rec.size(), header.size()) + 1,
                       "expected " + std::to_string(header.size()) + " fields, found " +
                           std::to_string(rec.size()));
    }
    ds.labels.push_back(rec[label_index]);
    for (std::size_t a = 0; a < attribute_fields.size(); ++a) {
      const std::string& cell = rec[attribute_fields[a]];
      const bool missing =
          missing_tokens.contains(cell) || missing_tokens.contains(std::string(trim(cell)));
      double value = 0.0;
      if (!missing && !parse_real(cell, value)) {
        throw ParseError(row_number, attribute_fields[a] + 1,
                         "cell '" + cell + "' in column '" + ds.column_names[a] +
                             "' is not a finite real number or missing token");
      }
      ds.columns[a].push_back(missing ? 0.0 : value);
      ds.missing_mask[a].push_back(missing);
    }
  }

  if (ds.n_attributes() < 1) {
    throw Error(ErrorCode::InvalidArgument, "dataset needs at least one attribute column");
  }
  if (ds.n_samples() < 2) {
    throw Error(ErrorCode::InvalidArgument, "dataset needs at least two samples");
  }
  return ds;
}

TabularDataset load_csv(const std::filesystem::path& path, std::string_view label_column,
                        const std::set<std::string>& missing_tokens) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FileNotFound, "cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_csv_dataset(buffer.str(), label_column, missing_tokens);
}

SplitAssignment split(std::size_t n_samples, double ratio, std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "split ratio must lie strictly between 0 and 1");
  }
  const auto n_train = static_cast<std::size_t>(std::llround(ratio * static_cast<double>(n_samples)));
  if (n_samples < 2 || n_train == 0 || n_train >= n_samples) {
    throw Error(ErrorCode::DegenerateSplit,
                "ratio " + std::to_string(ratio) + " over " + std::to_string(n_samples) +
                    " samples leaves one side of the split empty");
  }

  std::vector<std::size_t> order(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) order[i] = i;
  SplitMix64 rng(seed);
  shuffle(std::span<std::size_t>(order), rng);

  SplitAssignment out;
  out.seed = seed;
  out.ratio = ratio;
  out.train_indices.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
  out.test_indices.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
  return out;
}

SplitAssignment split(const TabularDataset& ds, double ratio, std::uint64_t seed) {
  return split(ds.n_samples(), ratio, seed);
}

void validate_split(const SplitAssignment& s, std::size_t n_samples) {
  std::vector<int> seen(n_samples, 0);
  auto mark = [&](std::size_t i) {
    if (i >= n_samples || seen[i]++) {
      throw Error(ErrorCode::InconsistentInputs,
                  "split index " + std::to_string(i) + " is out of range or repeated");
    }
  };
  for (auto i : s.train_indices) mark(i);
  for (auto i : s.test_indices) mark(i);
  if (s.train_indices.size() + s.test_indices.size() != n_samples) {
    throw Error(ErrorCode::InconsistentInputs, "split does not cover every sample");
  }
}

TabularDataset impute_missing(const TabularDataset& ds, const SplitAssignment& s) {
  validate_split(s, ds.n_samples());
  TabularDataset out = ds;
  for (std::size_t a = 0; a < ds.n_attributes(); ++a) {
    CompensatedSum sum;
    std::size_t present = 0;
    for (auto i : s.train_indices) {
      if (!ds.missing_mask[a][i]) {
        sum.add(ds.columns[a][i]);
        ++present;
      }
    }
    const double fill = present ? sum.value() / static_cast<double>(present) : 0.0;
    for (std::size_t i = 0; i < ds.n_samples(); ++i) {
      if (ds.missing_mask[a][i]) out.columns[a][i] = fill;
    }
    out.missing_mask[a].assign(ds.n_samples(), false);
  }
  return out;
}

MinMaxScaler MinMaxScaler::fit(const TabularDataset& ds, const SplitAssignment& s) {
  validate_split(s, ds.n_samples());
  if (ds.has_missing()) {
    throw Error(ErrorCode::InvalidArgument, "min-max scaling requires imputed data");
  }
  MinMaxScaler scaler;
  scaler.ranges_.reserve(ds.n_attributes());
  for (const auto& col : ds.columns) {
    ColumnRange range{col[s.train_indices.front()], col[s.train_indices.front()]};
    for (auto i : s.train_indices) {
      range.min = std::min(range.min, col[i]);
      range.max = std::max(range.max, col[i]);
    }
    scaler.ranges_.push_back(range);
  }
  return scaler;
}

double MinMaxScaler::scale(std::size_t column, double value) const {
  const ColumnRange& r = ranges_.at(column);
  if (r.constant()) return 0.5;
  return std::clamp((value - r.min) / (r.max - r.min), 0.0, 1.0);
}

TabularDataset MinMaxScaler::apply(const TabularDataset& ds) const {
  if (ds.n_attributes() != ranges_.size()) {
    throw Error(ErrorCode::LengthMismatch, "scaler was fitted on a different attribute count");
  }
  TabularDataset out = ds;
  for (std::size_t a = 0; a < ds.n_attributes(); ++a) {
    for (auto& v : out.columns[a]) v = scale(a, v);
  }
  return out;
}

TabularDataset min_max_scale(const TabularDataset& ds, const SplitAssignment& s) {
  return MinMaxScaler::fit(ds, s).apply(ds);
}

TabularDataset select_rows(const TabularDataset& ds, const std::vector<std::size_t>& rows) {
  TabularDataset out;
  out.column_names = ds.column_names;
  out.columns.resize(ds.n_attributes());
  out.missing_mask.resize(ds.n_attributes());
  for (auto r : rows) {
    out.labels.push_back(ds.labels.at(r));
    for (std::size_t a = 0; a < ds.n_attributes(); ++a) {
      out.columns[a].push_back(ds.columns[a][r]);
      out.missing_mask[a].push_back(ds.missing_mask[a][r]);
    }
  }
  return out;
}

}  // namespace vfp
