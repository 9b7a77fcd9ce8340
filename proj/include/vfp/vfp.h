/*
 * vfp.h - C interface to libvfp (tabular rows to spiral-ordered images).
 *
 * Every function returns a vfp_status. On failure a human-readable message
 * is available from vfp_last_error() on the calling thread until the next
 * call into the library. Objects are opaque handles released with their
 * matching *_free function; strings returned through char** out-parameters
 * are released with vfp_string_free.
 */
#ifndef VFP_VFP_H
#define VFP_VFP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(VFP_BUILDING_LIBRARY)
#    define VFP_API __declspec(dllexport)
#  else
#    define VFP_API __declspec(dllimport)
#  endif
#else
#  define VFP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vfp_status {
  VFP_OK = 0,
  VFP_ERR_INVALID_ARGUMENT = 1,
  VFP_ERR_FILE_NOT_FOUND = 2,
  VFP_ERR_MISSING_LABEL_COLUMN = 3,
  VFP_ERR_PARSE = 4,
  VFP_ERR_DEGENERATE_SPLIT = 5,
  VFP_ERR_LENGTH_MISMATCH = 6,
  VFP_ERR_NON_FINITE_SCORE = 7,
  VFP_ERR_UNSUPPORTED_DIMS = 8,
  VFP_ERR_IMAGE_TOO_SMALL = 9,
  VFP_ERR_IO = 10,
  VFP_ERR_FORMAT = 11,
  VFP_ERR_NOT_FOUND = 12,
  VFP_ERR_INCONSISTENT_INPUTS = 13,
  VFP_ERR_INTERNAL = 99
} vfp_status;

typedef enum vfp_strategy {
  VFP_STRATEGY_NONE = 0,
  VFP_STRATEGY_ZPOS1 = 1,
  VFP_STRATEGY_ZPOS2 = 2,
  VFP_STRATEGY_DISTANCING = 3
} vfp_strategy;

typedef enum vfp_direction { VFP_ASCENDING = 0, VFP_DESCENDING = 1 } vfp_direction;

typedef enum vfp_corr_scope { VFP_CORR_TRAIN = 0, VFP_CORR_FULL = 1 } vfp_corr_scope;

typedef enum vfp_report_format { VFP_REPORT_TEXT = 0, VFP_REPORT_CSV = 1 } vfp_report_format;

typedef struct vfp_dims {
  size_t rows;
  size_t cols;
} vfp_dims;

typedef struct vfp_image_size {
  size_t height;
  size_t width;
} vfp_image_size;

/* ---- diagnostics ------------------------------------------------------- */

VFP_API const char* vfp_version(void);
VFP_API const char* vfp_status_name(vfp_status status);
VFP_API const char* vfp_last_error(void);
VFP_API void vfp_string_free(char* text);

VFP_API vfp_status vfp_strategy_parse(const char* text, vfp_strategy* out);
VFP_API const char* vfp_strategy_name(vfp_strategy strategy);
VFP_API vfp_status vfp_direction_parse(const char* text, vfp_direction* out);
VFP_API const char* vfp_direction_name(vfp_direction direction);

/* ---- layout ------------------------------------------------------------ */

VFP_API vfp_status vfp_derive_dims(size_t k, vfp_dims* out);
VFP_API vfp_status vfp_image_size_of(vfp_strategy strategy, vfp_dims dims, vfp_image_size* out);

/* Fills `mask` (height*width bytes, row-major) with 1 at feature pixels.
 * `mask_len` must equal height*width for the strategy's image size. */
VFP_API vfp_status vfp_occupancy(vfp_strategy strategy, vfp_dims dims, uint8_t* mask,
                                 size_t mask_len);

/* Spiral order of grid cells: writes dims.rows*dims.cols (row, col) pairs
 * into `cells` as rows[0], cols[0], rows[1], cols[1], ... */
VFP_API vfp_status vfp_vortex_cells(vfp_dims dims, size_t* cells, size_t cells_len);

/* ---- convolution budget ------------------------------------------------ */

typedef struct vfp_conv_budget {
  vfp_strategy strategy;
  vfp_dims dims;
  int64_t counts[10]; /* counts[i] = window positions covering exactly i features */
  int64_t total;
} vfp_conv_budget;

VFP_API vfp_status vfp_budget_closed_form(vfp_strategy strategy, vfp_dims dims,
                                          vfp_conv_budget* out);
VFP_API vfp_status vfp_budget_brute_force(vfp_strategy strategy, vfp_dims dims,
                                          vfp_conv_budget* out);
/* Symbolic count formula ("2m+2n-8", "N/A", ...); features == 0 is the total. */
VFP_API const char* vfp_budget_formula(vfp_strategy strategy, int features);

/* Renders closed form against brute force for every (dims, strategy) pair.
 * *all_agree is set to 1 when every count matches, 0 otherwise. */
VFP_API vfp_status vfp_budget_report(const vfp_dims* dims, size_t n_dims,
                                     const vfp_strategy* strategies, size_t n_strategies,
                                     vfp_report_format format, char** text, int* all_agree);

/* ---- conversion -------------------------------------------------------- */

typedef struct vfp_run_config {
  const char* input_path;
  const char* label_column;
  vfp_strategy strategy;
  vfp_direction direction;
  double ratio;
  uint64_t seed;
  const char* out_dir;
  int emit_png;
  const char* const* missing_tokens; /* NULL selects "", "NA", "NaN" */
  size_t n_missing_tokens;
  vfp_corr_scope corr_scope;
  unsigned jobs; /* 0 = all available cores */
} vfp_run_config;

/* distancing, ascending, ratio 0.8, seed 1000, train-only correlation. */
VFP_API void vfp_run_config_init(vfp_run_config* cfg);

typedef struct vfp_convert_summary {
  size_t k;
  vfp_dims dims;
  vfp_image_size image;
  size_t written;
  size_t n_train;
  size_t n_test;
} vfp_convert_summary;

VFP_API vfp_status vfp_convert(const vfp_run_config* cfg, vfp_convert_summary* summary);

/* Load, split, impute, scale, score and lay out without writing anything. */
typedef struct vfp_prepared vfp_prepared;

VFP_API vfp_status vfp_prepare(const vfp_run_config* cfg, vfp_prepared** out);
VFP_API void vfp_prepared_free(vfp_prepared* p);
VFP_API size_t vfp_prepared_sample_count(const vfp_prepared* p);
VFP_API size_t vfp_prepared_attribute_count(const vfp_prepared* p);
VFP_API vfp_dims vfp_prepared_dims(const vfp_prepared* p);
/* column_name,score,rank */
VFP_API vfp_status vfp_prepared_scores_csv(const vfp_prepared* p, char** text);
/* strategy,rank,column_name,column_index,score,grid_row,grid_col,pixel_row,pixel_col */
VFP_API vfp_status vfp_prepared_layout_csv(const vfp_prepared* p, const vfp_strategy* strategies,
                                           size_t n_strategies, char** text);

/* ---- tensors ----------------------------------------------------------- */

typedef struct vfp_tensor vfp_tensor;

VFP_API vfp_status vfp_tensor_create(uint32_t channels, uint32_t height, uint32_t width,
                                     const float* data, vfp_tensor** out);
VFP_API vfp_status vfp_tensor_read(const char* path, vfp_tensor** out);
VFP_API vfp_status vfp_tensor_write(const vfp_tensor* t, const char* path);
VFP_API void vfp_tensor_shape(const vfp_tensor* t, uint32_t* channels, uint32_t* height,
                              uint32_t* width);
VFP_API const float* vfp_tensor_data(const vfp_tensor* t);
VFP_API void vfp_tensor_free(vfp_tensor* t);

/* 8-bit grayscale preview of a height x width row-major image in [0, 1]. */
VFP_API vfp_status vfp_write_png(const char* path, const double* values, size_t height,
                                 size_t width);

/* ---- manifests --------------------------------------------------------- */

typedef struct vfp_manifest vfp_manifest;

typedef struct vfp_manifest_info {
  vfp_strategy strategy;
  vfp_direction direction;
  vfp_dims dims;
  size_t k;
  vfp_image_size image;
  uint64_t seed;
  double ratio;
  size_t n_entries;
} vfp_manifest_info;

/* Strings stay valid until the manifest is freed. */
typedef struct vfp_manifest_entry {
  size_t sample_id;
  const char* label;
  const char* split;
  const char* tensor_path;
  const char* png_path;
} vfp_manifest_entry;

typedef struct vfp_layout_row {
  size_t rank;
  const char* column_name;
  size_t column_index;
  double score;
  size_t grid_row;
  size_t grid_col;
  size_t pixel_row;
  size_t pixel_col;
} vfp_layout_row;

/* `path` is manifest.csv or the directory containing it. */
VFP_API vfp_status vfp_manifest_open(const char* path, vfp_manifest** out);
VFP_API void vfp_manifest_free(vfp_manifest* m);
VFP_API vfp_status vfp_manifest_info_get(const vfp_manifest* m, vfp_manifest_info* out);
VFP_API vfp_status vfp_manifest_find(const vfp_manifest* m, size_t sample_id,
                                     vfp_manifest_entry* out);
/* Rows of layout.csv next to the manifest for the manifest's strategy. */
VFP_API size_t vfp_manifest_layout_count(const vfp_manifest* m);
VFP_API vfp_status vfp_manifest_layout_row(const vfp_manifest* m, size_t index,
                                           vfp_layout_row* out);
VFP_API vfp_status vfp_manifest_load_tensor(const vfp_manifest* m, size_t sample_id,
                                            vfp_tensor** out);
/* Checks every listed tensor: exists, parses, matches the header shape,
 * channels identical. Returns VFP_ERR_INCONSISTENT_INPUTS with the problem
 * list in *problems (may be NULL) when anything is off. */
VFP_API vfp_status vfp_manifest_verify(const vfp_manifest* m, size_t* tensors_checked,
                                       char** problems);

#ifdef __cplusplus
}
#endif

#endif /* VFP_VFP_H */
