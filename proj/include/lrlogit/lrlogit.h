#ifndef LRLOGIT_LRLOGIT_H
#define LRLOGIT_LRLOGIT_H

/* Low-rank logistic regression: packing construction, simulation, fitting,
 * decoding and minimax lower-bound arithmetic.
 *
 * Conventions:
 *   - Every fallible call returns lrl_status; on failure a message is
 *     available from lrl_last_error() on the calling thread.
 *   - Matrices cross the boundary as row-major double arrays.
 *   - Strings returned through char** are owned by the caller and released
 *     with lrl_string_free().
 *   - Handles are released with their matching *_free(); NULL is accepted. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(LRL_BUILDING_LIBRARY)
#    define LRL_API __declspec(dllexport)
#  else
#    define LRL_API __declspec(dllimport)
#  endif
#else
#  define LRL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lrl_status {
  LRL_OK = 0,
  LRL_INVALID_ARGUMENT = 1,
  LRL_CARDINALITY_TOO_LARGE = 2,
  LRL_DEGENERATE_CARDINALITY = 3,
  LRL_EMPTY_RANGE = 4,
  LRL_CONSTRUCTION_FAILED = 5,
  LRL_RANK_DEFICIENT = 6,
  LRL_IO_ERROR = 7,
  LRL_PARSE_ERROR = 8,
  LRL_VERIFICATION_FAILED = 9,
  LRL_INTERNAL_ERROR = 10
} lrl_status;

typedef enum lrl_variant { LRL_VARIANT_THEOREM = 0, LRL_VARIANT_APPENDIX = 1 } lrl_variant;

typedef enum lrl_method { LRL_METHOD_FULL = 0, LRL_METHOD_LOWRANK = 1, LRL_METHOD_ORACLE = 2 } lrl_method;

typedef enum lrl_step { LRL_STEP_BACKTRACKING = 0, LRL_STEP_FIXED = 1 } lrl_step;

typedef enum lrl_init { LRL_INIT_ZERO = 0, LRL_INIT_GAUSSIAN = 1, LRL_INIT_MATRIX = 2 } lrl_init;

/* Stable identifier such as "EmptyRange" or "IoError". */
LRL_API const char* lrl_status_name(lrl_status status);
/* Message of the most recent failure on this thread ("" if none). */
LRL_API const char* lrl_last_error(void);
LRL_API const char* lrl_version(void);
LRL_API void lrl_string_free(char* str);

/* ---- packing ---------------------------------------------------------- */

typedef struct lrl_packing lrl_packing;

typedef struct lrl_packing_params {
  size_t m1;
  size_t m2;
  size_t r;
  double d;
  double epsilon;  /* <= 0 selects the geometric midpoint of the admissible range */
  uint64_t seed;
  double kappa;
  int max_attempts;
  size_t count_f;  /* 0 = default codebook size */
  size_t count_p1;
  size_t count_p2;
  int require_certified;  /* nonzero: fail with LRL_CONSTRUCTION_FAILED unless verified */
} lrl_packing_params;

LRL_API void lrl_packing_params_default(lrl_packing_params* params);
LRL_API lrl_status lrl_packing_build(const lrl_packing_params* params, lrl_packing** out);
LRL_API lrl_status lrl_packing_from_json(const char* text, lrl_packing** out);
LRL_API lrl_status lrl_packing_to_json(const lrl_packing* packing, char** out);
/* Report recorded at construction (empty checks for deserialized packings). */
LRL_API lrl_status lrl_packing_report_json(const lrl_packing* packing, char** out);
/* Re-runs every invariant check; *passed is 1 iff all hold. */
LRL_API lrl_status lrl_packing_verify(const lrl_packing* packing, double kappa, int* passed,
                                      char** report_json);
LRL_API size_t lrl_packing_size(const lrl_packing* packing);
LRL_API lrl_status lrl_packing_dims(const lrl_packing* packing, size_t* m1, size_t* m2,
                                    size_t* r);
LRL_API double lrl_packing_epsilon(const lrl_packing* packing);
LRL_API double lrl_packing_min_pairwise_sq(const lrl_packing* packing);
/* Writes element `index` (m1*m2 doubles, row-major) into out. */
LRL_API lrl_status lrl_packing_element(const lrl_packing* packing, size_t index, double* out);
LRL_API void lrl_packing_free(lrl_packing* packing);

/* ---- dataset ---------------------------------------------------------- */

typedef struct lrl_dataset lrl_dataset;

LRL_API lrl_status lrl_dataset_simulate(const double* b, size_t m1, size_t m2, size_t n,
                                        double sigma, uint64_t seed, lrl_dataset** out);
LRL_API lrl_status lrl_dataset_simulate_packing(const lrl_packing* packing, size_t index,
                                                size_t n, double sigma, uint64_t seed,
                                                lrl_dataset** out);
LRL_API lrl_status lrl_dataset_from_json(const char* text, lrl_dataset** out);
LRL_API lrl_status lrl_dataset_to_json(const lrl_dataset* data, char** out);
/* Reads JSON or the binary layout (detected from content). */
LRL_API lrl_status lrl_dataset_load(const char* path, lrl_dataset** out);
LRL_API lrl_status lrl_dataset_save(const lrl_dataset* data, const char* path, int binary);
LRL_API size_t lrl_dataset_n(const lrl_dataset* data);
LRL_API lrl_status lrl_dataset_dims(const lrl_dataset* data, size_t* m1, size_t* m2);
/* -1 when the dataset carries no packing index. */
LRL_API int64_t lrl_dataset_truth_index(const lrl_dataset* data);
LRL_API void lrl_dataset_free(lrl_dataset* data);

/* ---- fit -------------------------------------------------------------- */

typedef struct lrl_fit lrl_fit;

typedef struct lrl_fit_options {
  lrl_method method;
  size_t rank;  /* lowrank only */
  size_t max_iters;
  double tol_grad;
  lrl_step step;
  double eta;  /* fixed step */
  double beta; /* backtracking */
  double c;
  double initial_step;
  lrl_init init;
  double init_scale;
  uint64_t init_seed;
  const double* init_matrix; /* m1*m2 row-major; also the truth for LRL_METHOD_ORACLE */
} lrl_fit_options;

LRL_API void lrl_fit_options_default(lrl_fit_options* opts);
LRL_API lrl_status lrl_fit_run(const lrl_dataset* data, const lrl_fit_options* opts,
                               lrl_fit** out);
LRL_API lrl_status lrl_fit_from_json(const char* text, lrl_fit** out);
LRL_API lrl_status lrl_fit_to_json(const lrl_fit* fit, char** out);
LRL_API lrl_status lrl_fit_dims(const lrl_fit* fit, size_t* m1, size_t* m2);
LRL_API lrl_status lrl_fit_estimate(const lrl_fit* fit, double* out);
LRL_API int lrl_fit_converged(const lrl_fit* fit);
LRL_API void lrl_fit_free(lrl_fit* fit);

/* ---- decoding and bounds ---------------------------------------------- */

/* Minimum-distance decoding; ties go to the smallest index. */
LRL_API lrl_status lrl_decode(const lrl_packing* packing, const double* b_hat, size_t m1,
                              size_t m2, size_t* index, double* distance_sq);

LRL_API lrl_status lrl_minimax_lower_bound(size_t m1, size_t m2, size_t r, size_t n,
                                           double sigma, lrl_variant variant, double* out);
LRL_API lrl_status lrl_fano_lower_bound(double cardinality, double p_err, double* out);

typedef struct lrl_bound_args {
  size_t m1;
  size_t m2;
  size_t r;
  size_t n;
  double sigma;
  lrl_variant variant;
  double epsilon; /* > 0 adds the information sandwich for this radius */
} lrl_bound_args;

LRL_API lrl_status lrl_bound_report(const lrl_bound_args* args, char** out);

/* ---- experiment ------------------------------------------------------- */

/* Runs a sweep from a JSON configuration. Either output may be NULL. */
LRL_API lrl_status lrl_experiment_run(const char* config_json, char** summary_json,
                                      char** csv);

#ifdef __cplusplus
}
#endif

#endif /* LRLOGIT_LRLOGIT_H */
