#include "vfp/pipeline.hpp"

#include <fstream>

#include "vfp/error.hpp"

namespace vfp {

namespace fs = std::filesystem;

const char* to_string(CorrScope s) noexcept { return s == CorrScope::Train ? "train" : "full"; }

CorrScope parse_corr_scope(std::string_view text) {
  if (text == "train") return CorrScope::Train;
  if (text == "full") return CorrScope::Full;
  throw Error(ErrorCode::InvalidArgument, "unknown correlation scope '" + std::string(text) + "'");
}

void RunConfig::validate() const {
  if (input_path.empty()) throw Error(ErrorCode::InvalidArgument, "no input file given");
  if (label_column.empty()) throw Error(ErrorCode::InvalidArgument, "no label column given");
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "ratio must lie strictly between 0 and 1");
  }
}

PreparedData prepare(const RunConfig& cfg) {
  cfg.validate();
  const unsigned jobs = std::max(1u, cfg.jobs);
  const TabularDataset raw = load_csv(cfg.input_path, cfg.label_column, cfg.missing_tokens);

  PreparedData p;
  p.split = split(raw, cfg.ratio, cfg.seed);
  const TabularDataset imputed = impute_missing(raw, p.split);
  p.scaler = MinMaxScaler::fit(imputed, p.split);
  p.scaled = p.scaler.apply(imputed);

  std::vector<double> scores;
  if (cfg.corr_scope == CorrScope::Train) {
    scores = correlation_scores(p.scaled, p.split.train_indices, jobs);
  } else {
    scores = correlation_scores(p.scaled, jobs);
  }
  p.profile = make_profile(std::move(scores), cfg.direction);
  p.layout = VortexLayout::for_attributes(p.scaled.n_attributes());
  return p;
}

ConvertSummary run_convert(const RunConfig& cfg) {
  if (cfg.out_dir.empty()) throw Error(ErrorCode::InvalidArgument, "no output directory given");
  const PreparedData p = prepare(cfg);

  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + cfg.out_dir.string() + ": " + ec.message());

  auto write = [&](std::string_view name, const std::string& text) {
    std::ofstream out(cfg.out_dir / name, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + (cfg.out_dir / name).string());
  };
  write(kSplitFile, format_split_manifest(p.split, p.scaled.n_samples()));
  write(kScoresFile, format_scores(p.profile, p.scaled.column_names));
  const Strategy chosen[] = {cfg.strategy};
  write(kLayoutFile,
        format_layout_report(layout_rows(p.profile, p.scaled.column_names, p.layout, chosen)));

  EmitOptions options;
  options.strategy = cfg.strategy;
  options.emit_png = cfg.emit_png;
  options.jobs = std::max(1u, cfg.jobs);
  options.corr_scope = to_string(cfg.corr_scope);
  options.scaler = p.scaler.ranges();
  const auto manifest = emit_dataset(p.scaled, p.profile, p.layout, p.split, options, cfg.out_dir);

  ConvertSummary s;
  s.k = p.layout.k;
  s.dims = p.layout.dims;
  s.image = manifest.header.image;
  s.written = manifest.entries.size();
  s.n_train = p.split.train_indices.size();
  s.n_test = p.split.test_indices.size();
  return s;
}

}  // namespace vfp
