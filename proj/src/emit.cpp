#include "vfp/emit.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "vfp/csv.hpp"
#include "vfp/error.hpp"
#include "vfp/parallel.hpp"
#include "vfp/png_writer.hpp"
#include "vfp/tensor_file.hpp"

namespace vfp {

namespace fs = std::filesystem;

namespace {

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

template <typename T>
T parse_number(std::string_view text, std::string_view what) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::FormatError,
                "bad " + std::string(what) + " value '" + std::string(text) + "'");
  }
  return value;
}

std::pair<std::size_t, std::size_t> parse_pair(std::string_view text, std::string_view what) {
  const auto x = text.find('x');
  if (x == std::string_view::npos) {
    throw Error(ErrorCode::FormatError, "bad " + std::string(what) + " '" + std::string(text) + "'");
  }
  return {parse_number<std::size_t>(text.substr(0, x), what),
          parse_number<std::size_t>(text.substr(x + 1), what)};
}

std::string sample_stem(std::size_t id) { return "sample_" + std::to_string(id); }

}  // namespace

std::string format_real(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

const ManifestEntry* DatasetManifest::find(std::size_t sample_id) const {
  const auto it = std::lower_bound(
      entries.begin(), entries.end(), sample_id,
      [](const ManifestEntry& e, std::size_t id) { return e.sample_id < id; });
  if (it != entries.end() && it->sample_id == sample_id) return &*it;
  return nullptr;
}

std::string format_manifest(const DatasetManifest& m) {
  const auto& h = m.header;
  std::ostringstream out;
  out << "# format=vfp-manifest/1\n"
      << "# strategy=" << to_string(h.strategy) << '\n'
      << "# direction=" << to_string(h.direction) << '\n'
      << "# grid=" << h.dims.rows << 'x' << h.dims.cols << '\n'
      << "# k=" << h.k << '\n'
      << "# image=" << h.image.height << 'x' << h.image.width << '\n'
      << "# channels=3\n"
      << "# seed=" << h.seed << '\n'
      << "# ratio=" << format_real(h.ratio) << '\n'
      << "# corr_scope=" << h.corr_scope << '\n'
      << "# scaler=" << h.scaler_file << '\n'
      << "sample_id,label,split,tensor_path,png_path\n";
  for (const auto& e : m.entries) {
    out << csv::join({std::to_string(e.sample_id), e.label, e.split, e.tensor_path, e.png_path})
        << '\n';
  }
  return out.str();
}

DatasetManifest parse_manifest(std::string_view text) {
  DatasetManifest m;
  std::map<std::string, std::string, std::less<>> keys;
  while (text.starts_with("#")) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(1, eol == std::string_view::npos ? text.npos : eol - 1);
    if (line.ends_with('\r')) line.remove_suffix(1);
    while (line.starts_with(' ')) line.remove_prefix(1);
    const auto eq = line.find('=');
    if (eq != std::string_view::npos) keys[std::string(line.substr(0, eq))] = line.substr(eq + 1);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
  }
  auto need = [&](std::string_view key) -> const std::string& {
    const auto it = keys.find(key);
    if (it == keys.end()) {
      throw Error(ErrorCode::FormatError, "manifest header lacks '" + std::string(key) + "'");
    }
    return it->second;
  };
  if (need("format") != "vfp-manifest/1") {
    throw Error(ErrorCode::FormatError, "unsupported manifest format '" + need("format") + "'");
  }
  auto& h = m.header;
  try {
    h.strategy = parse_strategy(need("strategy"));
    h.direction = parse_direction(need("direction"));
  } catch (const Error& e) {
    throw Error(ErrorCode::FormatError, std::string("manifest: ") + e.what());
  }
  const auto [gr, gc] = parse_pair(need("grid"), "grid");
  h.dims = {gr, gc};
  h.k = parse_number<std::size_t>(need("k"), "k");
  const auto [ih, iw] = parse_pair(need("image"), "image");
  h.image = {ih, iw};
  h.seed = parse_number<std::uint64_t>(need("seed"), "seed");
  h.ratio = parse_number<double>(need("ratio"), "ratio");
  h.corr_scope = need("corr_scope");
  h.scaler_file = need("scaler");

  const auto records = csv::parse(text);
  if (records.empty() || records.front() != csv::Record{"sample_id", "label", "split",
                                                         "tensor_path", "png_path"}) {
    throw Error(ErrorCode::FormatError, "manifest column header is missing or wrong");
  }
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.size() != 5) {
      throw Error(ErrorCode::FormatError, "manifest row " + std::to_string(r) + " has " +
                                              std::to_string(rec.size()) + " fields");
    }
    m.entries.push_back({parse_number<std::size_t>(rec[0], "sample_id"), rec[1], rec[2], rec[3], rec[4]});
  }
  std::sort(m.entries.begin(), m.entries.end(),
            [](const ManifestEntry& a, const ManifestEntry& b) { return a.sample_id < b.sample_id; });
  return m;
}

fs::path manifest_directory(const fs::path& path) {
  return fs::is_directory(path) ? path : path.parent_path();
}

DatasetManifest read_manifest(const fs::path& path) {
  const fs::path file = fs::is_directory(path) ? path / kManifestFile : path;
  if (!fs::exists(file)) throw Error(ErrorCode::NotFound, "no manifest at " + file.string());
  return parse_manifest(read_text(file));
}

Tensor convert_sample(std::span<const double> sample, const CorrelationProfile& profile,
                      const VortexLayout& layout, Strategy strategy) {
  return to_three_channels(embed(place(profile, sample, layout), strategy));
}

DatasetManifest emit_dataset(const TabularDataset& ds, const CorrelationProfile& profile,
                             const VortexLayout& layout, const SplitAssignment& split,
                             const EmitOptions& options, const fs::path& out_dir) {
  const std::size_t k = ds.n_attributes();
  if (profile.order.size() != k || profile.scores.size() != k || layout.k != k) {
    throw Error(ErrorCode::InconsistentInputs,
                "dataset has " + std::to_string(k) + " attributes but profile/layout expect " +
                    std::to_string(layout.k));
  }
  if (ds.has_missing()) throw Error(ErrorCode::InconsistentInputs, "dataset still has missing values");
  for (const auto& col : ds.columns) {
    for (double v : col) {
      if (!(v >= 0.0 && v <= 1.0)) {
        throw Error(ErrorCode::InconsistentInputs, "dataset is not min-max scaled into [0, 1]");
      }
    }
  }
  if (!options.scaler.empty() && options.scaler.size() != k) {
    throw Error(ErrorCode::InconsistentInputs, "scaler parameters do not match the attribute count");
  }
  validate_split(split, ds.n_samples());

  std::error_code ec;
  fs::create_directories(out_dir / "tensors", ec);
  if (!ec && options.emit_png) fs::create_directories(out_dir / "png", ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + out_dir.string() + ": " + ec.message());

  DatasetManifest manifest;
  auto& h = manifest.header;
  h.strategy = options.strategy;
  h.direction = profile.direction;
  h.dims = layout.dims;
  h.k = k;
  h.image = image_size(options.strategy, layout.dims);
  h.seed = split.seed;
  h.ratio = split.ratio;
  h.corr_scope = options.corr_scope;
  if (!options.scaler.empty()) {
    h.scaler_file = std::string(kScalerFile);
    write_text(out_dir / kScalerFile, format_scaler(options.scaler, ds.column_names));
  }

  const auto train = split.train_mask(ds.n_samples());
  manifest.entries.resize(ds.n_samples());
  parallel_for(ds.n_samples(), options.jobs, [&](std::size_t id) {
    const auto sample = ds.sample(id);
    const auto img = embed(place(profile, sample, layout), options.strategy);
    ManifestEntry& e = manifest.entries[id];
    e.sample_id = id;
    e.label = ds.labels[id];
    e.split = train[id] ? "train" : "test";
    e.tensor_path = "tensors/" + sample_stem(id) + ".vfpt";
    write_tensor(out_dir / e.tensor_path, to_three_channels(img));
    if (options.emit_png) {
      e.png_path = "png/" + sample_stem(id) + ".png";
      write_png(out_dir / e.png_path, img.values);
    }
  });

  write_text(out_dir / kManifestFile, format_manifest(manifest));
  return manifest;
}

OutputCheck verify_output(const fs::path& manifest_path) {
  OutputCheck check;
  const auto manifest = read_manifest(manifest_path);
  const auto dir = manifest_directory(manifest_path);
  const auto& h = manifest.header;
  for (const auto& e : manifest.entries) {
    const std::string where = "sample " + std::to_string(e.sample_id);
    Tensor t;
    try {
      t = read_tensor(dir / e.tensor_path);
    } catch (const Error& err) {
      check.problems.push_back(where + ": " + err.what());
      continue;
    }
    ++check.tensors_checked;
    if (t.channels != 3 || t.height != h.image.height || t.width != h.image.width) {
      check.problems.push_back(where + ": shape " + std::to_string(t.channels) + "x" +
                               std::to_string(t.height) + "x" + std::to_string(t.width) +
                               " does not match the manifest header");
      continue;
    }
    const std::size_t plane = std::size_t{t.height} * t.width;
    if (!std::equal(t.data.begin(), t.data.begin() + plane, t.data.begin() + plane) ||
        !std::equal(t.data.begin(), t.data.begin() + plane, t.data.begin() + 2 * plane)) {
      check.problems.push_back(where + ": channels differ");
    }
    if (!e.png_path.empty() && !fs::exists(dir / e.png_path)) {
      check.problems.push_back(where + ": missing preview " + e.png_path);
    }
  }
  return check;
}

std::string format_split_manifest(const SplitAssignment& split, std::size_t n_samples) {
  const auto train = split.train_mask(n_samples);
  std::string out = "sample_id,split\n";
  for (std::size_t i = 0; i < n_samples; ++i) {
    out += std::to_string(i) + (train[i] ? ",train\n" : ",test\n");
  }
  return out;
}

std::string format_scores(const CorrelationProfile& profile, std::span<const std::string> names) {
  std::vector<std::size_t> rank_of(profile.order.size());
  for (std::size_t t = 0; t < profile.order.size(); ++t) rank_of[profile.order[t]] = t;
  std::string out = "column_name,score,rank\n";
  for (std::size_t a = 0; a < profile.scores.size(); ++a) {
    out += csv::join({names[a], format_real(profile.scores[a]), std::to_string(rank_of[a])}) + '\n';
  }
  return out;
}

std::string format_scaler(std::span<const ColumnRange> ranges, std::span<const std::string> names) {
  std::string out = "column_name,min,max\n";
  for (std::size_t a = 0; a < ranges.size(); ++a) {
    out += csv::join({names[a], format_real(ranges[a].min), format_real(ranges[a].max)}) + '\n';
  }
  return out;
}

std::vector<LayoutRow> layout_rows(const CorrelationProfile& profile,
                                   std::span<const std::string> names, const VortexLayout& layout,
                                   std::span<const Strategy> strategies) {
  std::vector<LayoutRow> rows;
  for (Strategy s : strategies) {
    for (std::size_t t = 0; t < layout.k; ++t) {
      const std::size_t a = profile.order.at(t);
      const Cell g = layout.cell_of_rank.at(t);
      rows.push_back({s, t, a, names[a], profile.scores.at(a), g, pixel_of(s, g)});
    }
  }
  return rows;
}

std::string format_layout_report(std::span<const LayoutRow> rows) {
  std::string out =
      "strategy,rank,column_name,column_index,score,grid_row,grid_col,pixel_row,pixel_col\n";
  for (const auto& r : rows) {
    out += csv::join({to_string(r.strategy), std::to_string(r.rank), r.column_name,
                      std::to_string(r.column), format_real(r.score), std::to_string(r.grid.row),
                      std::to_string(r.grid.col), std::to_string(r.pixel.row),
                      std::to_string(r.pixel.col)}) +
           '\n';
  }
  return out;
}

std::vector<LayoutRow> parse_layout_report(std::string_view text) {
  const auto records = csv::parse(text);
  if (records.empty() || records.front().size() != 9 || records.front()[0] != "strategy") {
    throw Error(ErrorCode::FormatError, "layout report header is missing or wrong");
  }
  std::vector<LayoutRow> rows;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& f = records[r];
    if (f.size() != 9) throw Error(ErrorCode::FormatError, "layout report row " + std::to_string(r));
    LayoutRow row;
    try {
      row.strategy = parse_strategy(f[0]);
    } catch (const Error& e) {
      throw Error(ErrorCode::FormatError, std::string("layout report: ") + e.what());
    }
    row.rank = parse_number<std::size_t>(f[1], "rank");
    row.column_name = f[2];
    row.column = parse_number<std::size_t>(f[3], "column_index");
    row.score = parse_number<double>(f[4], "score");
    row.grid = {parse_number<std::size_t>(f[5], "grid_row"), parse_number<std::size_t>(f[6], "grid_col")};
    row.pixel = {parse_number<std::size_t>(f[7], "pixel_row"),
                 parse_number<std::size_t>(f[8], "pixel_col")};
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace vfp
