/* C interface to the cnnperf performance-prediction engine.
 *
 * Every fallible call returns a cnnperf_status; on failure a description is
 * available from cnnperf_last_error() on the same thread until the next
 * call. Objects are opaque handles released with their _free function.
 * Strings returned as `const char*` are owned by the handle they came from.
 */
#ifndef CNNPERF_H
#define CNNPERF_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(CNNPERF_BUILDING)
#    define CNNPERF_API __declspec(dllexport)
#  else
#    define CNNPERF_API __declspec(dllimport)
#  endif
#else
#  define CNNPERF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cnnperf_status {
  CNNPERF_OK = 0,
  CNNPERF_ERR_VALIDATION = 1,
  CNNPERF_ERR_IO = 2,
  CNNPERF_ERR_PARSE = 3,
  CNNPERF_ERR_NOT_FOUND = 4,
  CNNPERF_ERR_FIT = 5,
  CNNPERF_ERR_CALIBRATION = 6,
  CNNPERF_ERR_ARGUMENT = 7,
  CNNPERF_ERR_INTERNAL = 8
} cnnperf_status;

typedef enum cnnperf_strategy { CNNPERF_STRATEGY_A = 0, CNNPERF_STRATEGY_B = 1 } cnnperf_strategy;

typedef enum cnnperf_chunk_mode {
  CNNPERF_CHUNK_EXACT = 0, /* i/p as a real number */
  CNNPERF_CHUNK_CEIL = 1   /* slowest worker: ceil(i/p) */
} cnnperf_chunk_mode;

typedef enum cnnperf_format {
  CNNPERF_FORMAT_CSV = 0,
  CNNPERF_FORMAT_JSON = 1,
  CNNPERF_FORMAT_TEXT = 2
} cnnperf_format;

typedef enum cnnperf_contention_source {
  CNNPERF_CONTENTION_MEASURED = 0,
  CNNPERF_CONTENTION_INTERPOLATED = 1,
  CNNPERF_CONTENTION_EXTRAPOLATED = 2
} cnnperf_contention_source;

typedef struct cnnperf_dataset cnnperf_dataset;
typedef struct cnnperf_table cnnperf_table;

typedef struct cnnperf_workload {
  int64_t images;      /* i */
  int64_t test_images; /* it */
  int64_t epochs;      /* ep */
  int64_t threads;     /* p */
  int64_t instances;   /* ns; 0 = one per thread */
} cnnperf_workload;

typedef struct cnnperf_prediction {
  double total_s;
  double prep_s;
  double train_s;
  double validate_s;
  double test_s;
  double mem_s;
  double cpi;
  double contention_s;
  double chunk_images;
  double chunk_test_images;
} cnnperf_prediction;

CNNPERF_API const char* cnnperf_version(void);
CNNPERF_API const char* cnnperf_last_error(void);
/* Maps a status onto the CLI exit convention: 0 ok, 2 I/O, 1 otherwise. */
CNNPERF_API int cnnperf_exit_code(cnnperf_status status);

/* ---- datasets ---------------------------------------------------------- */

/* Loads a bundled preset ("paper", "paper-tableIX"; NULL means "paper") and
 * applies each config document on top as a JSON merge patch. */
CNNPERF_API cnnperf_status cnnperf_dataset_open(const char* preset, const char* const* config_paths,
                                                size_t config_count, cnnperf_dataset** out);
CNNPERF_API void cnnperf_dataset_free(cnnperf_dataset* ds);
CNNPERF_API const char* cnnperf_dataset_name(const cnnperf_dataset* ds);
/* Non-empty when the preset variant changed bundled constants. */
CNNPERF_API const char* cnnperf_dataset_notice(const cnnperf_dataset* ds);
CNNPERF_API size_t cnnperf_dataset_architecture_count(const cnnperf_dataset* ds);
CNNPERF_API const char* cnnperf_dataset_architecture_name(const cnnperf_dataset* ds, size_t index);
CNNPERF_API cnnperf_status cnnperf_dataset_set_param(cnnperf_dataset* ds, const char* arch,
                                                     const char* key, double value);
CNNPERF_API cnnperf_status cnnperf_dataset_default_workload(const cnnperf_dataset* ds,
                                                            const char* arch, int64_t threads,
                                                            cnnperf_workload* out);

/* ---- model evaluation -------------------------------------------------- */

CNNPERF_API cnnperf_status cnnperf_predict(const cnnperf_dataset* ds, const char* arch,
                                           cnnperf_strategy strategy, const cnnperf_workload* w,
                                           cnnperf_chunk_mode mode, cnnperf_prediction* out);
CNNPERF_API cnnperf_status cnnperf_calibrate(const cnnperf_dataset* ds, const char* arch,
                                             double measured_s, const cnnperf_workload* w,
                                             cnnperf_chunk_mode mode, double* operation_factor);
CNNPERF_API cnnperf_status cnnperf_cpi_for(const cnnperf_dataset* ds, int64_t threads, double* out);
CNNPERF_API cnnperf_status cnnperf_contention_at(const cnnperf_dataset* ds, const char* arch,
                                                 int64_t threads, double* seconds,
                                                 cnnperf_contention_source* source);
/* fit_range <= 0 fits every measured sample. */
CNNPERF_API cnnperf_status cnnperf_fit_contention(const cnnperf_dataset* ds, const char* arch,
                                                  int64_t fit_range, double* slope,
                                                  double* intercept);
CNNPERF_API cnnperf_status cnnperf_memory_overhead(double contention_s, int64_t epochs,
                                                   int64_t images, int64_t threads, double* out);
CNNPERF_API cnnperf_status cnnperf_accuracy_delta(double measured_s, double predicted_s,
                                                  double* out);
CNNPERF_API cnnperf_status cnnperf_count_ops(const cnnperf_dataset* ds, const char* arch,
                                             uint64_t* fprop_ops, uint64_t* bprop_ops);

/* ---- tables ------------------------------------------------------------ */

CNNPERF_API cnnperf_status cnnperf_prediction_table(const cnnperf_dataset* ds, const char* arch,
                                                    cnnperf_strategy strategy,
                                                    const cnnperf_workload* w,
                                                    cnnperf_chunk_mode mode, cnnperf_table** out);
CNNPERF_API cnnperf_status cnnperf_calibration_table(const cnnperf_dataset* ds, const char* arch,
                                                     double measured_s, const cnnperf_workload* w,
                                                     cnnperf_chunk_mode mode, cnnperf_table** out);
CNNPERF_API cnnperf_status cnnperf_count_ops_table(const cnnperf_dataset* ds, const char* arch,
                                                   cnnperf_table** out);
/* Architecture document ({"name": ..., "layers": [...]}) read from a file. */
CNNPERF_API cnnperf_status cnnperf_count_ops_file_table(const char* path, cnnperf_table** out);
CNNPERF_API cnnperf_status cnnperf_contention_table(const cnnperf_dataset* ds, const char* arch,
                                                    const int64_t* threads, size_t thread_count,
                                                    cnnperf_table** out);
CNNPERF_API cnnperf_status cnnperf_sweep_table(const cnnperf_dataset* ds, const char* const* archs,
                                               size_t arch_count, const int64_t* threads,
                                               size_t thread_count, cnnperf_chunk_mode mode,
                                               cnnperf_table** out);
/* images[k] and test_images[k] form one grid row. */
CNNPERF_API cnnperf_status cnnperf_scale_grid_table(
    const cnnperf_dataset* ds, const char* arch, const int64_t* images, const int64_t* test_images,
    size_t image_count, const int64_t* epochs, size_t epoch_count, const int64_t* threads,
    size_t thread_count, cnnperf_chunk_mode mode, cnnperf_table** out);
/* Measured-run CSV with header arch,p,i,it,ep,measured_s. */
CNNPERF_API cnnperf_status cnnperf_validate_file_table(const cnnperf_dataset* ds,
                                                       cnnperf_strategy strategy,
                                                       const char* csv_path,
                                                       cnnperf_chunk_mode mode,
                                                       cnnperf_table** out,
                                                       double* average_delta_percent);
CNNPERF_API cnnperf_status cnnperf_validate_text_table(const cnnperf_dataset* ds,
                                                       cnnperf_strategy strategy,
                                                       const char* csv_text,
                                                       cnnperf_chunk_mode mode,
                                                       cnnperf_table** out,
                                                       double* average_delta_percent);
CNNPERF_API cnnperf_status cnnperf_dataset_table(const cnnperf_dataset* ds, cnnperf_table** out);

CNNPERF_API void cnnperf_table_free(cnnperf_table* t);
CNNPERF_API size_t cnnperf_table_row_count(const cnnperf_table* t);
CNNPERF_API size_t cnnperf_table_column_count(const cnnperf_table* t);
CNNPERF_API const char* cnnperf_table_column_name(const cnnperf_table* t, size_t column);
/* NULL when out of range. */
CNNPERF_API const char* cnnperf_table_cell(const cnnperf_table* t, size_t row, size_t column);
/* Returns 1 and stores the value if the cell is numeric, else 0. */
CNNPERF_API int cnnperf_table_cell_number(const cnnperf_table* t, size_t row, size_t column,
                                          double* out);
/* Summary value text by key, NULL if absent. */
CNNPERF_API const char* cnnperf_table_summary(const cnnperf_table* t, const char* key);
/* *out must be released with cnnperf_string_free. */
CNNPERF_API cnnperf_status cnnperf_table_render(const cnnperf_table* t, cnnperf_format format,
                                                char** out);
CNNPERF_API cnnperf_status cnnperf_table_write(const cnnperf_table* t, cnnperf_format format,
                                               const char* path);
CNNPERF_API void cnnperf_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* CNNPERF_H */
