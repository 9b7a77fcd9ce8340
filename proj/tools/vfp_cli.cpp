// vfp - command-line front end to libvfp.
//
//   vfp convert  --input iris.csv --label species --out out/
//   vfp analyze  --dims 3x3
//   vfp inspect  --manifest out/ --sample 0
//   vfp scores   --input iris.csv --label species
//   vfp layout   --input iris.csv --label species --strategy all
//
// Exit codes: 0 success, 1 data/runtime error, 2 usage error.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "vfp/vfp.h"

namespace {

enum ExitCode { kOk = 0, kRuntimeError = 1, kUsageError = 2 };

enum class LogLevel { Quiet = 0, Info = 1, Debug = 2 };

// VFP_LOG=quiet|info|debug controls progress messages on stderr.
LogLevel log_level() {
  const char* env = std::getenv("VFP_LOG");
  if (!env) return LogLevel::Quiet;
  const std::string v = env;
  if (v == "debug") return LogLevel::Debug;
  if (v == "info") return LogLevel::Info;
  return LogLevel::Quiet;
}

void log(LogLevel level, const std::string& message) {
  if (static_cast<int>(log_level()) >= static_cast<int>(level)) std::cerr << "vfp: " << message << '\n';
}

int report_failure(vfp_status status) {
  std::cerr << "error [" << vfp_status_name(status) << "]: " << vfp_last_error() << '\n';
  return kRuntimeError;
}

struct CString {
  char* text = nullptr;
  ~CString() { vfp_string_free(text); }
};

struct PreparedHandle {
  vfp_prepared* p = nullptr;
  ~PreparedHandle() { vfp_prepared_free(p); }
};

struct ManifestHandle {
  vfp_manifest* m = nullptr;
  ~ManifestHandle() { vfp_manifest_free(m); }
};

struct TensorHandle {
  vfp_tensor* t = nullptr;
  ~TensorHandle() { vfp_tensor_free(t); }
};

const std::vector<std::string> kStrategyNames{"none", "zpos1", "zpos2", "distancing"};

vfp_strategy strategy_of(const std::string& name) {
  vfp_strategy s = VFP_STRATEGY_DISTANCING;
  vfp_strategy_parse(name.c_str(), &s);  // validated by CLI::IsMember
  return s;
}

// Options shared by every subcommand that reads a CSV.
struct InputOptions {
  std::string input;
  std::string label;
  std::string direction = "ascending";
  double ratio = 0.8;
  std::uint64_t seed = 1000;
  std::vector<std::string> missing{"", "NA", "NaN"};
  std::string corr_scope = "train";
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());

  void attach(CLI::App* cmd) {
    cmd->add_option("-i,--input", input, "Input CSV file (header row required)")
        ->required();
    cmd->add_option("-l,--label", label, "Name of the label column")->required();
    cmd->add_option("--direction", direction, "Placement order of correlation scores")
        ->check(CLI::IsMember({"ascending", "descending"}))
        ->capture_default_str();
    cmd->add_option("--ratio", ratio, "Train fraction of the split")
        ->check(CLI::Validator(
            [](std::string& text) -> std::string {
              double v = 0.0;
              try {
                v = std::stod(text);
              } catch (const std::exception&) {
                return "not a number";
              }
              return (v > 0.0 && v < 1.0) ? "" : "must lie strictly between 0 and 1";
            },
            "(0,1)"))
        ->capture_default_str();
    cmd->add_option("--seed", seed, "Seed of the SplitMix64 shuffle")->capture_default_str();
    cmd->add_option("--missing", missing, "Cell texts treated as missing (default: \"\" NA NaN)");
    cmd->add_option("--corr-scope", corr_scope, "Rows used for correlation scores")
        ->check(CLI::IsMember({"train", "full"}))
        ->capture_default_str();
    cmd->add_option("-j,--jobs", jobs, "Worker threads")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  }

  // Pointers into `missing` stay valid while this object lives.
  vfp_run_config config(std::vector<const char*>& tokens) const {
    vfp_run_config cfg;
    vfp_run_config_init(&cfg);
    cfg.input_path = input.c_str();
    cfg.label_column = label.c_str();
    cfg.direction = direction == "descending" ? VFP_DESCENDING : VFP_ASCENDING;
    cfg.ratio = ratio;
    cfg.seed = seed;
    tokens.clear();
    for (const auto& t : missing) tokens.push_back(t.c_str());
    cfg.missing_tokens = tokens.data();
    cfg.n_missing_tokens = tokens.size();
    cfg.corr_scope = corr_scope == "full" ? VFP_CORR_FULL : VFP_CORR_TRAIN;
    cfg.jobs = jobs;
    return cfg;
  }
};

int write_output(const std::string& path, const char* text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return kOk;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) {
    std::cerr << "error [IoError]: cannot write " << path << '\n';
    return kRuntimeError;
  }
  return kOk;
}

int run_convert(const InputOptions& in, const std::string& strategy, const std::string& out_dir,
                bool png) {
  std::vector<const char*> tokens;
  vfp_run_config cfg = in.config(tokens);
  cfg.strategy = strategy_of(strategy);
  cfg.out_dir = out_dir.c_str();
  cfg.emit_png = png ? 1 : 0;

  log(LogLevel::Info, "converting " + in.input + " with " + strategy + "/" + in.direction);
  vfp_convert_summary s{};
  if (const auto status = vfp_convert(&cfg, &s); status != VFP_OK) return report_failure(status);

  std::cout << "attributes (k): " << s.k << '\n'
            << "grid:           " << s.dims.rows << "x" << s.dims.cols << '\n'
            << "image:          3x" << s.image.height << "x" << s.image.width << " (" << strategy
            << ")\n"
            << "samples:        " << s.written << " (" << s.n_train << " train, " << s.n_test
            << " test)\n"
            << "output:         " << out_dir << '\n';
  return kOk;
}

bool parse_dims(const std::string& text, vfp_dims& out) {
  const auto x = text.find_first_of("xX");
  if (x == std::string::npos) return false;
  try {
    std::size_t used = 0;
    const auto r = std::stoul(text.substr(0, x), &used);
    if (used != x) return false;
    const auto c = std::stoul(text.substr(x + 1), &used);
    if (used != text.size() - x - 1) return false;
    out = {r, c};
  } catch (const std::exception&) {
    return false;
  }
  return out.rows > 0 && out.cols > 0;
}

int run_analyze(const std::vector<std::string>& dims_text, std::size_t attrs,
                std::vector<std::string> strategies, const std::string& csv_path) {
  std::vector<vfp_dims> dims;
  for (const auto& t : dims_text) {
    vfp_dims d{};
    if (!parse_dims(t, d)) {
      std::cerr << "error: --dims expects ROWSxCOLS with positive sides, got '" << t << "'\n";
      return kUsageError;
    }
    dims.push_back(d);
  }
  if (attrs > 0) {
    vfp_dims d{};
    if (const auto st = vfp_derive_dims(attrs, &d); st != VFP_OK) return report_failure(st);
    std::cout << "k = " << attrs << " attributes -> grid " << d.rows << "x" << d.cols << '\n';
    dims.push_back(d);
  }

  std::vector<vfp_strategy> chosen;
  if (strategies.empty() || (strategies.size() == 1 && strategies[0] == "all")) {
    // Default: every strategy whose closed form covers all requested grids.
    for (const auto& name : kStrategyNames) {
      const auto s = strategy_of(name);
      bool ok = true;
      for (const auto& d : dims) {
        vfp_conv_budget b{};
        ok = ok && vfp_budget_closed_form(s, d, &b) == VFP_OK;
      }
      if (ok) {
        chosen.push_back(s);
      } else {
        std::cout << "(skipping " << name << ": grid too small for its closed form)\n";
      }
    }
    if (chosen.empty()) {
      std::cerr << "error [UnsupportedDims]: no strategy has a closed form for the requested grid\n";
      return kRuntimeError;
    }
  } else {
    for (const auto& name : strategies) chosen.push_back(strategy_of(name));
  }

  for (const auto& d : dims) {
    for (const auto s : chosen) {
      vfp_image_size size{};
      vfp_image_size_of(s, d, &size);
      std::cout << vfp_strategy_name(s) << " image for grid " << d.rows << "x" << d.cols << ": "
                << size.height << "x" << size.width << '\n';
    }
  }
  std::cout << '\n';

  CString table;
  int agree = 0;
  if (const auto st = vfp_budget_report(dims.data(), dims.size(), chosen.data(), chosen.size(),
                                        VFP_REPORT_TEXT, &table.text, &agree);
      st != VFP_OK) {
    return report_failure(st);
  }
  std::cout << table.text;

  if (!csv_path.empty()) {
    CString csv;
    if (const auto st = vfp_budget_report(dims.data(), dims.size(), chosen.data(), chosen.size(),
                                          VFP_REPORT_CSV, &csv.text, nullptr);
        st != VFP_OK) {
      return report_failure(st);
    }
    if (const int rc = write_output(csv_path, csv.text); rc != kOk) return rc;
  }
  return agree ? kOk : kRuntimeError;
}

int run_inspect(const std::string& manifest_path, std::size_t sample_id) {
  ManifestHandle m;
  if (const auto st = vfp_manifest_open(manifest_path.c_str(), &m.m); st != VFP_OK) {
    return report_failure(st);
  }
  vfp_manifest_info info{};
  vfp_manifest_info_get(m.m, &info);
  vfp_manifest_entry entry{};
  if (const auto st = vfp_manifest_find(m.m, sample_id, &entry); st != VFP_OK) {
    return report_failure(st);
  }
  TensorHandle t;
  if (const auto st = vfp_manifest_load_tensor(m.m, sample_id, &t.t); st != VFP_OK) {
    return report_failure(st);
  }
  uint32_t c = 0, h = 0, w = 0;
  vfp_tensor_shape(t.t, &c, &h, &w);
  const float* values = vfp_tensor_data(t.t);

  std::cout << "strategy " << vfp_strategy_name(info.strategy) << ", direction "
            << vfp_direction_name(info.direction) << ", grid " << info.dims.rows << "x"
            << info.dims.cols << ", k=" << info.k << ", image " << c << "x" << h << "x" << w
            << ", seed " << info.seed << '\n'
            << "sample " << entry.sample_id << ": label " << entry.label << ", split "
            << entry.split << ", tensor " << entry.tensor_path << "\n\n";

  const std::size_t rows = vfp_manifest_layout_count(m.m);
  std::vector<vfp_layout_row> layout(rows);
  std::size_t name_width = 11;
  for (std::size_t i = 0; i < rows; ++i) {
    vfp_manifest_layout_row(m.m, i, &layout[i]);
    name_width = std::max(name_width, std::string(layout[i].column_name).size());
  }
  if (rows == 0) {
    std::cout << "(no layout.csv next to the manifest)\n";
  } else {
    std::cout << std::left << std::setw(6) << "rank" << std::setw(static_cast<int>(name_width) + 2)
              << "column" << std::setw(12) << "score" << std::setw(10) << "grid" << std::setw(10)
              << "pixel" << "value\n";
    for (const auto& r : layout) {
      std::ostringstream grid, pixel, score;
      grid << '(' << r.grid_row << ',' << r.grid_col << ')';
      pixel << '(' << r.pixel_row << ',' << r.pixel_col << ')';
      score << std::fixed << std::setprecision(6) << r.score;
      const float v = (r.pixel_row < h && r.pixel_col < w) ? values[r.pixel_row * w + r.pixel_col] : 0.0f;
      std::cout << std::left << std::setw(6) << r.rank << std::setw(static_cast<int>(name_width) + 2)
                << r.column_name << std::setw(12) << score.str() << std::setw(10) << grid.str()
                << std::setw(10) << pixel.str() << std::fixed << std::setprecision(4) << v << '\n';
    }
  }

  std::vector<uint8_t> mask(std::size_t{h} * w);
  if (const auto st = vfp_occupancy(info.strategy, info.dims, mask.data(), mask.size()); st != VFP_OK) {
    return report_failure(st);
  }
  std::vector<char> art(mask.size(), '.');
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) art[i] = 'o';
  }
  for (const auto& r : layout) {
    if (r.pixel_row < h && r.pixel_col < w) art[r.pixel_row * w + r.pixel_col] = '#';
  }
  std::cout << "\noccupancy (# attribute, o padding cell, . zero pixel):\n";
  for (uint32_t y = 0; y < h; ++y) {
    std::cout << "  " << std::string(art.begin() + y * w, art.begin() + (y + 1) * w) << '\n';
  }
  return kOk;
}

int run_scores(const InputOptions& in, const std::string& out_path) {
  std::vector<const char*> tokens;
  const vfp_run_config cfg = in.config(tokens);
  PreparedHandle p;
  if (const auto st = vfp_prepare(&cfg, &p.p); st != VFP_OK) return report_failure(st);
  CString csv;
  if (const auto st = vfp_prepared_scores_csv(p.p, &csv.text); st != VFP_OK) return report_failure(st);
  return write_output(out_path, csv.text);
}

int run_layout(const InputOptions& in, const std::vector<std::string>& strategies,
               const std::string& out_path) {
  std::vector<const char*> tokens;
  const vfp_run_config cfg = in.config(tokens);
  std::vector<vfp_strategy> chosen;
  for (const auto& name : strategies) {
    if (name == "all") {
      for (const auto& n : kStrategyNames) chosen.push_back(strategy_of(n));
    } else {
      chosen.push_back(strategy_of(name));
    }
  }
  PreparedHandle p;
  if (const auto st = vfp_prepare(&cfg, &p.p); st != VFP_OK) return report_failure(st);
  CString csv;
  if (const auto st = vfp_prepared_layout_csv(p.p, chosen.data(), chosen.size(), &csv.text);
      st != VFP_OK) {
    return report_failure(st);
  }
  return write_output(out_path, csv.text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vfp: lay tabular rows out as spiral-ordered images for CNNs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(vfp_version()));

  auto strategies_all = kStrategyNames;
  strategies_all.push_back("all");

  // convert
  InputOptions convert_in;
  std::string convert_strategy = "distancing";
  std::string convert_out;
  bool convert_png = false;
  auto* convert = app.add_subcommand("convert", "Convert a CSV into 3-channel tensor files");
  convert_in.attach(convert);
  convert->add_option("-s,--strategy", convert_strategy, "Embedding strategy")
      ->check(CLI::IsMember(kStrategyNames))
      ->capture_default_str();
  convert->add_option("-o,--out", convert_out, "Output directory")->required();
  convert->add_flag("--png", convert_png, "Also write 8-bit grayscale PNG previews");

  // analyze
  std::vector<std::string> analyze_dims;
  std::size_t analyze_attrs = 0;
  std::vector<std::string> analyze_strategies;
  std::string analyze_csv;
  auto* analyze = app.add_subcommand(
      "analyze", "Count 3x3 convolution windows per covered-feature count, closed form vs brute force");
  auto* dims_opt = analyze->add_option("--dims", analyze_dims, "Grid size(s) as ROWSxCOLS, e.g. 3x3");
  auto* attrs_opt =
      analyze->add_option("--attrs", analyze_attrs, "Attribute count k; the grid is derived from it")
          ->check(CLI::PositiveNumber);
  analyze->add_option("-s,--strategy", analyze_strategies,
                      "Strategies to analyze (default: all with a closed form for the grid)")
      ->check(CLI::IsMember(strategies_all));
  analyze->add_option("--csv", analyze_csv, "Also write the table as CSV to this file ('-' = stdout)");
  analyze->callback([&] {
    if (dims_opt->count() == 0 && attrs_opt->count() == 0) {
      throw CLI::RequiredError("--dims or --attrs");
    }
  });

  // inspect
  std::string inspect_manifest;
  std::size_t inspect_sample = 0;
  auto* inspect = app.add_subcommand("inspect", "Show where one sample's attributes landed");
  inspect->add_option("-m,--manifest", inspect_manifest, "manifest.csv or its directory")
      ->required();
  inspect->add_option("--sample", inspect_sample, "Sample id")->required();

  // scores
  InputOptions scores_in;
  std::string scores_out;
  auto* scores = app.add_subcommand("scores", "Print summed absolute correlation scores as CSV");
  scores_in.attach(scores);
  scores->add_option("-o,--out", scores_out, "Output file (default: stdout)");

  // layout
  InputOptions layout_in;
  std::vector<std::string> layout_strategies{"distancing"};
  std::string layout_out;
  auto* layout = app.add_subcommand("layout", "Print the rank -> grid -> pixel layout report as CSV");
  layout_in.attach(layout);
  layout->add_option("-s,--strategy", layout_strategies, "Strategies to report, or 'all'")
      ->check(CLI::IsMember(strategies_all))
      ->capture_default_str();
  layout->add_option("-o,--out", layout_out, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsageError;
  }

  if (*convert) return run_convert(convert_in, convert_strategy, convert_out, convert_png);
  if (*analyze) return run_analyze(analyze_dims, analyze_attrs, analyze_strategies, analyze_csv);
  if (*inspect) return run_inspect(inspect_manifest, inspect_sample);
  if (*scores) return run_scores(scores_in, scores_out);
  if (*layout) return run_layout(layout_in, layout_strategies, layout_out);
  return kUsageError;
}
