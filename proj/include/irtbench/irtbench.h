#ifndef IRTBENCH_IRTBENCH_H
#define IRTBENCH_IRTBENCH_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define IRTB_API __declspec(dllexport)
#else
#define IRTB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum irtb_status {
  IRTB_OK = 0,
  IRTB_E_PARSE = 1,
  IRTB_E_VALIDATION = 2,
  IRTB_E_TOO_SMALL = 3,
  IRTB_E_SIZE = 4,
  IRTB_E_NO_INFORMATION = 5,
  IRTB_E_EMPTY_PROFILE = 6,
  IRTB_E_NUMERICAL = 7,
  IRTB_E_UNSUPPORTED = 8,
  IRTB_E_IO = 9,
  IRTB_E_INVALID_ARGUMENT = 10,
  IRTB_E_INTERNAL = 99
} irtb_status;

/* Message of the last failed call on the calling thread; "" if none. */
IRTB_API const char* irtb_last_error(void);
IRTB_API const char* irtb_status_string(irtb_status status);
IRTB_API const char* irtb_version(void);

/* Model functions. */
IRTB_API double irtb_p_correct(double theta, double a, double b, double c);
IRTB_API void irtb_conservative_interval(double rating, double rd, double* low, double* high);

typedef struct irtb_rating {
  double r;
  double rd;
  double sigma;
} irtb_rating;

/* One Glicko-2 period update. scores[i] in {0, 0.5, 1} against opponents[i]. */
IRTB_API irtb_status irtb_glicko2_update(const irtb_rating* player, const irtb_rating* opponents,
                                         const double* scores, size_t count, double tau,
                                         irtb_rating* out);

IRTB_API irtb_status irtb_plan_split(size_t total_instances, double ratio, size_t test_cap,
                                     size_t* train, size_t* test);

/* Response matrices. */
typedef struct irtb_matrix irtb_matrix;

IRTB_API irtb_status irtb_matrix_load(const char* path, const char* dataset_id, irtb_matrix** out);
IRTB_API irtb_status irtb_matrix_save(const irtb_matrix* matrix, const char* path);
IRTB_API void irtb_matrix_free(irtb_matrix* matrix);
IRTB_API size_t irtb_matrix_rows(const irtb_matrix* matrix);
IRTB_API size_t irtb_matrix_cols(const irtb_matrix* matrix);
IRTB_API irtb_status irtb_matrix_cell(const irtb_matrix* matrix, size_t row, size_t col, int* value);
/* Appends the seven artificial respondents built from a labels CSV. */
IRTB_API irtb_status irtb_matrix_add_artificial(irtb_matrix* matrix, const char* labels_path,
                                                const uint64_t seeds[3]);

/* Birnbaum fits. */
typedef struct irtb_fit irtb_fit;

typedef struct irtb_fit_options {
  int max_outer_iterations;
  double b_convergence_tol;
  int standardize_abilities;
  unsigned workers;
} irtb_fit_options;

IRTB_API void irtb_fit_options_default(irtb_fit_options* options);
/* options may be NULL for defaults. */
IRTB_API irtb_status irtb_fit_run(const irtb_matrix* matrix, const irtb_fit_options* options,
                                  irtb_fit** out);
IRTB_API void irtb_fit_free(irtb_fit* fit);
IRTB_API size_t irtb_fit_item_count(const irtb_fit* fit);
IRTB_API size_t irtb_fit_respondent_count(const irtb_fit* fit);
IRTB_API int irtb_fit_iterations(const irtb_fit* fit);
IRTB_API int irtb_fit_converged(const irtb_fit* fit);
/* flag: 0 none, 1 all_correct, 2 all_wrong, 3 nonconverged. */
IRTB_API irtb_status irtb_fit_item(const irtb_fit* fit, size_t index, double* a, double* b, double* c,
                                   int* flag);
IRTB_API irtb_status irtb_fit_ability(const irtb_fit* fit, size_t index, double* theta,
                                      double* true_score);

/* Manifest-driven pipeline. */
typedef struct irtb_pipeline irtb_pipeline;

typedef struct irtb_pipeline_options {
  const char* out_dir; /* NULL keeps the manifest value */
  int has_seed;
  uint64_t seed;
  unsigned workers;    /* 0 keeps the manifest value */
  double difficulty_min;     /* NaN keeps the manifest value */
  double discrimination_min; /* NaN keeps the manifest value */
  double guessing_min;       /* NaN keeps the manifest value */
  int order_sweep;
} irtb_pipeline_options;

IRTB_API void irtb_pipeline_options_default(irtb_pipeline_options* options);
IRTB_API irtb_status irtb_pipeline_open(const char* manifest_path, const irtb_pipeline_options* options,
                                        irtb_pipeline** out);
IRTB_API void irtb_pipeline_free(irtb_pipeline* pipeline);
IRTB_API irtb_status irtb_pipeline_fit(irtb_pipeline* pipeline);
IRTB_API irtb_status irtb_pipeline_analyze(irtb_pipeline* pipeline);
IRTB_API irtb_status irtb_pipeline_rate(irtb_pipeline* pipeline);
IRTB_API irtb_status irtb_pipeline_subset(irtb_pipeline* pipeline, double cut_pct, size_t* members);
IRTB_API irtb_status irtb_pipeline_stats(irtb_pipeline* pipeline);
IRTB_API irtb_status irtb_pipeline_report(irtb_pipeline* pipeline);
IRTB_API const char* irtb_pipeline_manifest_hash(const irtb_pipeline* pipeline);
IRTB_API const char* irtb_pipeline_out_dir(const irtb_pipeline* pipeline);
IRTB_API size_t irtb_pipeline_cut_count(const irtb_pipeline* pipeline);
IRTB_API double irtb_pipeline_cut(const irtb_pipeline* pipeline, size_t index);
/* Dataset-level failures collected so far. */
IRTB_API size_t irtb_pipeline_failure_count(const irtb_pipeline* pipeline);
IRTB_API irtb_status irtb_pipeline_failure(const irtb_pipeline* pipeline, size_t index,
                                           const char** dataset_id, const char** stage,
                                           const char** message);

#ifdef __cplusplus
}
#endif

#endif
