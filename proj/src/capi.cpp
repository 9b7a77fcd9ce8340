#include "vfp/vfp.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <fstream>
#include <memory>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "vfp/conv_budget.hpp"
#include "vfp/emit.hpp"
#include "vfp/error.hpp"
#include "vfp/pipeline.hpp"
#include "vfp/png_writer.hpp"
#include "vfp/tensor_file.hpp"

static_assert(static_cast<int>(vfp::ErrorCode::InvalidArgument) == VFP_ERR_INVALID_ARGUMENT);
static_assert(static_cast<int>(vfp::ErrorCode::InconsistentInputs) == VFP_ERR_INCONSISTENT_INPUTS);
static_assert(static_cast<int>(vfp::Strategy::Distancing) == VFP_STRATEGY_DISTANCING);

struct vfp_prepared {
  vfp::PreparedData data;
};

struct vfp_tensor {
  vfp::Tensor tensor;
};

struct vfp_manifest {
  std::filesystem::path dir;
  vfp::DatasetManifest manifest;
  std::vector<vfp::LayoutRow> layout;
};

namespace {

thread_local std::string g_last_error;

vfp_status fail(vfp_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs body and maps any exception onto a status code.
template <typename Body>
vfp_status guarded(Body&& body) noexcept {
  g_last_error.clear();
  try {
    body();
    return VFP_OK;
  } catch (const vfp::Error& e) {
    return fail(static_cast<vfp_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(VFP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(VFP_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(VFP_ERR_INTERNAL, "unknown error");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw vfp::Error(vfp::ErrorCode::InvalidArgument, what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

vfp::Strategy to_cpp(vfp_strategy s) {
  switch (s) {
    case VFP_STRATEGY_NONE: return vfp::Strategy::None;
    case VFP_STRATEGY_ZPOS1: return vfp::Strategy::Zpos1;
    case VFP_STRATEGY_ZPOS2: return vfp::Strategy::Zpos2;
    case VFP_STRATEGY_DISTANCING: return vfp::Strategy::Distancing;
  }
  throw vfp::Error(vfp::ErrorCode::InvalidArgument, "unknown strategy value");
}

vfp_strategy to_c(vfp::Strategy s) { return static_cast<vfp_strategy>(s); }

vfp::GridDims to_cpp(vfp_dims d) { return {d.rows, d.cols}; }
vfp_dims to_c(vfp::GridDims d) { return {d.rows, d.cols}; }

vfp::RunConfig to_cpp(const vfp_run_config& c) {
  require(c.input_path && c.label_column, "run config needs input_path and label_column");
  vfp::RunConfig cfg;
  cfg.input_path = c.input_path;
  cfg.label_column = c.label_column;
  cfg.strategy = to_cpp(c.strategy);
  cfg.direction = c.direction == VFP_DESCENDING ? vfp::Direction::Descending : vfp::Direction::Ascending;
  cfg.ratio = c.ratio;
  cfg.seed = c.seed;
  if (c.out_dir) cfg.out_dir = c.out_dir;
  cfg.emit_png = c.emit_png != 0;
  if (c.missing_tokens) {
    cfg.missing_tokens.clear();
    for (size_t i = 0; i < c.n_missing_tokens; ++i) {
      require(c.missing_tokens[i] != nullptr, "null missing token");
      cfg.missing_tokens.insert(c.missing_tokens[i]);
    }
  }
  cfg.corr_scope = c.corr_scope == VFP_CORR_FULL ? vfp::CorrScope::Full : vfp::CorrScope::Train;
  cfg.jobs = c.jobs == 0 ? vfp::default_jobs() : c.jobs;
  return cfg;
}

void fill_budget(const vfp::ConvBudget& b, vfp_conv_budget* out) {
  *out = {};
  out->strategy = to_c(b.strategy);
  out->dims = to_c(b.dims);
  for (const auto& [features, count] : b.counts) out->counts[features] += count;
  for (const auto& [features, count] : b.unexpected) {
    if (features >= 0 && features <= 9) out->counts[features] += count;
  }
  out->total = b.total;
}

}  // namespace

extern "C" {

const char* vfp_version(void) { return "1.0.0"; }

const char* vfp_status_name(vfp_status status) {
  if (status == VFP_OK) return "OK";
  if (status == VFP_ERR_INTERNAL) return "Internal";
  if (status >= VFP_ERR_INVALID_ARGUMENT && status <= VFP_ERR_INCONSISTENT_INPUTS) {
    return vfp::to_string(static_cast<vfp::ErrorCode>(status));
  }
  return "Unknown";
}

const char* vfp_last_error(void) { return g_last_error.c_str(); }

void vfp_string_free(char* text) { std::free(text); }

vfp_status vfp_strategy_parse(const char* text, vfp_strategy* out) {
  return guarded([&] {
    require(text && out, "null argument");
    *out = to_c(vfp::parse_strategy(text));
  });
}

const char* vfp_strategy_name(vfp_strategy strategy) {
  if (strategy < VFP_STRATEGY_NONE || strategy > VFP_STRATEGY_DISTANCING) return "unknown";
  return vfp::to_string(static_cast<vfp::Strategy>(strategy));
}

vfp_status vfp_direction_parse(const char* text, vfp_direction* out) {
  return guarded([&] {
    require(text && out, "null argument");
    *out = vfp::parse_direction(text) == vfp::Direction::Ascending ? VFP_ASCENDING : VFP_DESCENDING;
  });
}

const char* vfp_direction_name(vfp_direction direction) {
  return direction == VFP_DESCENDING ? "descending" : "ascending";
}

vfp_status vfp_derive_dims(size_t k, vfp_dims* out) {
  return guarded([&] {
    require(out, "null argument");
    *out = to_c(vfp::derive_dims(k));
  });
}

vfp_status vfp_image_size_of(vfp_strategy strategy, vfp_dims dims, vfp_image_size* out) {
  return guarded([&] {
    require(out && dims.rows > 0 && dims.cols > 0, "image size needs positive dims");
    const auto size = vfp::image_size(to_cpp(strategy), to_cpp(dims));
    *out = {size.height, size.width};
  });
}

vfp_status vfp_occupancy(vfp_strategy strategy, vfp_dims dims, uint8_t* mask, size_t mask_len) {
  return guarded([&] {
    require(mask && dims.rows > 0 && dims.cols > 0, "occupancy needs a buffer and positive dims");
    const auto m = vfp::occupancy_mask(to_cpp(strategy), to_cpp(dims));
    if (mask_len != m.data().size()) {
      throw vfp::Error(vfp::ErrorCode::LengthMismatch,
                       "occupancy buffer holds " + std::to_string(mask_len) + " bytes, need " +
                           std::to_string(m.data().size()));
    }
    std::memcpy(mask, m.data().data(), mask_len);
  });
}

vfp_status vfp_vortex_cells(vfp_dims dims, size_t* cells, size_t cells_len) {
  return guarded([&] {
    require(cells != nullptr, "null argument");
    const auto order = vfp::vortex_cells(to_cpp(dims));
    if (cells_len != 2 * order.size()) {
      throw vfp::Error(vfp::ErrorCode::LengthMismatch, "cell buffer must hold 2*rows*cols entries");
    }
    for (size_t t = 0; t < order.size(); ++t) {
      cells[2 * t] = order[t].row;
      cells[2 * t + 1] = order[t].col;
    }
  });
}

vfp_status vfp_budget_closed_form(vfp_strategy strategy, vfp_dims dims, vfp_conv_budget* out) {
  return guarded([&] {
    require(out, "null argument");
    fill_budget(vfp::closed_form(to_cpp(strategy), to_cpp(dims)), out);
  });
}

vfp_status vfp_budget_brute_force(vfp_strategy strategy, vfp_dims dims, vfp_conv_budget* out) {
  return guarded([&] {
    require(out, "null argument");
    fill_budget(vfp::brute_force(to_cpp(strategy), to_cpp(dims)), out);
  });
}

const char* vfp_budget_formula(vfp_strategy strategy, int features) {
  if (strategy < VFP_STRATEGY_NONE || strategy > VFP_STRATEGY_DISTANCING) return "N/A";
  return vfp::budget_formula(static_cast<vfp::Strategy>(strategy), features);
}

vfp_status vfp_budget_report(const vfp_dims* dims, size_t n_dims, const vfp_strategy* strategies,
                             size_t n_strategies, vfp_report_format format, char** text,
                             int* all_agree) {
  return guarded([&] {
    require(text != nullptr, "null argument");
    require(dims || n_dims == 0, "null dims array");
    require(strategies || n_strategies == 0, "null strategy array");
    std::vector<vfp::GridDims> d;
    for (size_t i = 0; i < n_dims; ++i) d.push_back(to_cpp(dims[i]));
    std::vector<vfp::Strategy> s;
    for (size_t i = 0; i < n_strategies; ++i) s.push_back(to_cpp(strategies[i]));
    const auto report = vfp::budget_report(d, s);
    *text = dup_string(format == VFP_REPORT_CSV ? vfp::format_csv(report) : vfp::format_table(report));
    if (all_agree) *all_agree = report.all_agree() ? 1 : 0;
  });
}

void vfp_run_config_init(vfp_run_config* cfg) {
  if (!cfg) return;
  *cfg = {};
  cfg->strategy = VFP_STRATEGY_DISTANCING;
  cfg->direction = VFP_ASCENDING;
  cfg->ratio = 0.8;
  cfg->seed = 1000;
  cfg->corr_scope = VFP_CORR_TRAIN;
}

vfp_status vfp_convert(const vfp_run_config* cfg, vfp_convert_summary* summary) {
  return guarded([&] {
    require(cfg != nullptr, "null config");
    const auto s = vfp::run_convert(to_cpp(*cfg));
    if (summary) {
      summary->k = s.k;
      summary->dims = to_c(s.dims);
      summary->image = {s.image.height, s.image.width};
      summary->written = s.written;
      summary->n_train = s.n_train;
      summary->n_test = s.n_test;
    }
  });
}

vfp_status vfp_prepare(const vfp_run_config* cfg, vfp_prepared** out) {
  return guarded([&] {
    require(cfg && out, "null argument");
    *out = nullptr;
    auto p = std::make_unique<vfp_prepared>();
    p->data = vfp::prepare(to_cpp(*cfg));
    *out = p.release();
  });
}

void vfp_prepared_free(vfp_prepared* p) { delete p; }

size_t vfp_prepared_sample_count(const vfp_prepared* p) { return p ? p->data.scaled.n_samples() : 0; }

size_t vfp_prepared_attribute_count(const vfp_prepared* p) {
  return p ? p->data.scaled.n_attributes() : 0;
}

vfp_dims vfp_prepared_dims(const vfp_prepared* p) {
  return p ? to_c(p->data.layout.dims) : vfp_dims{0, 0};
}

vfp_status vfp_prepared_scores_csv(const vfp_prepared* p, char** text) {
  return guarded([&] {
    require(p && text, "null argument");
    *text = dup_string(vfp::format_scores(p->data.profile, p->data.scaled.column_names));
  });
}

vfp_status vfp_prepared_layout_csv(const vfp_prepared* p, const vfp_strategy* strategies,
                                   size_t n_strategies, char** text) {
  return guarded([&] {
    require(p && text && strategies && n_strategies > 0, "layout report needs strategies");
    std::vector<vfp::Strategy> s;
    for (size_t i = 0; i < n_strategies; ++i) s.push_back(to_cpp(strategies[i]));
    const auto rows = vfp::layout_rows(p->data.profile, p->data.scaled.column_names, p->data.layout, s);
    *text = dup_string(vfp::format_layout_report(rows));
  });
}

vfp_status vfp_tensor_create(uint32_t channels, uint32_t height, uint32_t width, const float* data,
                             vfp_tensor** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = nullptr;
    require(channels > 0 && height > 0 && width > 0, "tensor dimensions must be positive");
    auto t = std::make_unique<vfp_tensor>();
    t->tensor = vfp::Tensor(channels, height, width);
    if (data) std::memcpy(t->tensor.data.data(), data, t->tensor.size() * sizeof(float));
    *out = t.release();
  });
}

vfp_status vfp_tensor_read(const char* path, vfp_tensor** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = nullptr;
    auto t = std::make_unique<vfp_tensor>();
    t->tensor = vfp::read_tensor(path);
    *out = t.release();
  });
}

vfp_status vfp_tensor_write(const vfp_tensor* t, const char* path) {
  return guarded([&] {
    require(t && path, "null argument");
    vfp::write_tensor(path, t->tensor);
  });
}

void vfp_tensor_shape(const vfp_tensor* t, uint32_t* channels, uint32_t* height, uint32_t* width) {
  if (channels) *channels = t ? t->tensor.channels : 0;
  if (height) *height = t ? t->tensor.height : 0;
  if (width) *width = t ? t->tensor.width : 0;
}

const float* vfp_tensor_data(const vfp_tensor* t) { return t ? t->tensor.data.data() : nullptr; }

void vfp_tensor_free(vfp_tensor* t) { delete t; }

vfp_status vfp_write_png(const char* path, const double* values, size_t height, size_t width) {
  return guarded([&] {
    require(path && values, "null argument");
    vfp::Matrix<double> img(height, width);
    for (size_t r = 0; r < height; ++r) {
      for (size_t c = 0; c < width; ++c) img(r, c) = values[r * width + c];
    }
    vfp::write_png(path, img);
  });
}

vfp_status vfp_manifest_open(const char* path, vfp_manifest** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = nullptr;
    auto m = std::make_unique<vfp_manifest>();
    m->manifest = vfp::read_manifest(path);
    m->dir = vfp::manifest_directory(path);
    const auto layout_path = m->dir / vfp::kLayoutFile;
    if (std::filesystem::exists(layout_path)) {
      std::ifstream in(layout_path, std::ios::binary);
      std::ostringstream text;
      text << in.rdbuf();
      for (auto& row : vfp::parse_layout_report(text.str())) {
        if (row.strategy == m->manifest.header.strategy) m->layout.push_back(std::move(row));
      }
    }
    *out = m.release();
  });
}

void vfp_manifest_free(vfp_manifest* m) { delete m; }

vfp_status vfp_manifest_info_get(const vfp_manifest* m, vfp_manifest_info* out) {
  return guarded([&] {
    require(m && out, "null argument");
    const auto& h = m->manifest.header;
    out->strategy = to_c(h.strategy);
    out->direction = h.direction == vfp::Direction::Ascending ? VFP_ASCENDING : VFP_DESCENDING;
    out->dims = to_c(h.dims);
    out->k = h.k;
    out->image = {h.image.height, h.image.width};
    out->seed = h.seed;
    out->ratio = h.ratio;
    out->n_entries = m->manifest.entries.size();
  });
}

vfp_status vfp_manifest_find(const vfp_manifest* m, size_t sample_id, vfp_manifest_entry* out) {
  return guarded([&] {
    require(m && out, "null argument");
    const auto* e = m->manifest.find(sample_id);
    if (!e) {
      throw vfp::Error(vfp::ErrorCode::NotFound,
                       "sample " + std::to_string(sample_id) + " is not in the manifest");
    }
    *out = {e->sample_id, e->label.c_str(), e->split.c_str(), e->tensor_path.c_str(),
            e->png_path.c_str()};
  });
}

size_t vfp_manifest_layout_count(const vfp_manifest* m) { return m ? m->layout.size() : 0; }

vfp_status vfp_manifest_layout_row(const vfp_manifest* m, size_t index, vfp_layout_row* out) {
  return guarded([&] {
    require(m && out, "null argument");
    if (index >= m->layout.size()) {
      throw vfp::Error(vfp::ErrorCode::NotFound, "layout row " + std::to_string(index));
    }
    const auto& r = m->layout[index];
    *out = {r.rank,     r.column_name.c_str(), r.column,      r.score,
            r.grid.row, r.grid.col,            r.pixel.row,   r.pixel.col};
  });
}

vfp_status vfp_manifest_load_tensor(const vfp_manifest* m, size_t sample_id, vfp_tensor** out) {
  return guarded([&] {
    require(m && out, "null argument");
    *out = nullptr;
    const auto* e = m->manifest.find(sample_id);
    if (!e) {
      throw vfp::Error(vfp::ErrorCode::NotFound,
                       "sample " + std::to_string(sample_id) + " is not in the manifest");
    }
    auto t = std::make_unique<vfp_tensor>();
    t->tensor = vfp::read_tensor(m->dir / e->tensor_path);
    *out = t.release();
  });
}

vfp_status vfp_manifest_verify(const vfp_manifest* m, size_t* tensors_checked, char** problems) {
  if (problems) *problems = nullptr;
  vfp::OutputCheck check;
  const vfp_status status = guarded([&] {
    require(m != nullptr, "null argument");
    check = vfp::verify_output(m->dir / vfp::kManifestFile);
    if (tensors_checked) *tensors_checked = check.tensors_checked;
    if (problems && !check.ok()) {
      std::string joined;
      for (const auto& p : check.problems) joined += p + '\n';
      *problems = dup_string(joined);
    }
  });
  if (status != VFP_OK) return status;
  if (!check.ok()) {
    return fail(VFP_ERR_INCONSISTENT_INPUTS,
                std::to_string(check.problems.size()) + " problem(s) in emitted output");
  }
  return VFP_OK;
}

}  // extern "C"
