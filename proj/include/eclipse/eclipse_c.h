/* C interface to the black-box evasion toolkit. All functions returning
 * ecl_status set a thread-local diagnostic retrievable via ecl_last_error()
 * on failure. Handles are created by ecl_*_create/open/run functions and
 * released with the matching ecl_*_free; freeing NULL is a no-op. */
#ifndef ECLIPSE_ECLIPSE_C_H
#define ECLIPSE_ECLIPSE_C_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ECL_API __declspec(dllexport)
#else
#define ECL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ecl_status {
  ECL_OK = 0,
  ECL_ERR_INVALID_ARGUMENT = 1,
  ECL_ERR_IO = 2,
  ECL_ERR_CODEC = 3,
  ECL_ERR_TRANSPORT = 4,
  ECL_ERR_HTTP_STATUS = 5,
  ECL_ERR_SCHEMA = 6,
  ECL_ERR_INTERNAL = 7
} ecl_status;

/* Message for the most recent failing call on this thread. Never NULL. */
ECL_API const char* ecl_last_error(void);

/* ---------------------------------------------------------------- images */

typedef struct ecl_image ecl_image;

/* values is row-major H*W*3 interleaved RGB in [0,1], or NULL for zeros. */
ECL_API ecl_status ecl_image_create(int height, int width, const double* values,
                                    ecl_image** out);
ECL_API ecl_status ecl_image_read_png(const char* path, ecl_image** out);
ECL_API ecl_status ecl_image_write_png(const ecl_image* image, const char* path);
ECL_API ecl_status ecl_image_jpeg_roundtrip(const ecl_image* image, int quality,
                                            ecl_image** out);
ECL_API int ecl_image_height(const ecl_image* image);
ECL_API int ecl_image_width(const ecl_image* image);
/* Borrowed pointer to H*W*3 doubles; valid until the image is freed. */
ECL_API const double* ecl_image_values(const ecl_image* image);
ECL_API void ecl_image_free(ecl_image* image);

/* --------------------------------------------------------------- oracles */

typedef struct ecl_oracle ecl_oracle;

ECL_API ecl_status ecl_oracle_open_synthetic(const char* spec_path, ecl_oracle** out);
/* auth_header/auth_value may both be NULL for anonymous access. */
ECL_API ecl_status ecl_oracle_open_http(const char* url, const char* auth_header,
                                        const char* auth_value, int timeout_ms,
                                        int top_k, ecl_oracle** out);
/* One oracle query; absent labels score 0. */
ECL_API ecl_status ecl_oracle_score(const ecl_oracle* oracle, const ecl_image* image,
                                    const char* label, double* out_score);
ECL_API void ecl_oracle_free(ecl_oracle* oracle);

/* -------------------------------------------------------------- heatmaps */

typedef struct ecl_heatmap ecl_heatmap;

/* Grayscale PNG or headerless CSV; dimensions must match the image. */
ECL_API ecl_status ecl_heatmap_load(const char* path, int expected_height,
                                    int expected_width, ecl_heatmap** out);
/* Occlusion saliency against `oracle` (typically a cheap local model). */
ECL_API ecl_status ecl_heatmap_occlusion(const ecl_oracle* oracle,
                                         const ecl_image* image,
                                         const char* target_label, int patch,
                                         int stride, ecl_heatmap** out);
ECL_API void ecl_heatmap_free(ecl_heatmap* heatmap);

/* --------------------------------------------------------------- attacks */

typedef enum ecl_attack_kind {
  ECL_ATTACK_ECLIPSE = 0,
  ECL_ATTACK_SIMBA = 1,
  ECL_ATTACK_SIMBA_DCT = 2,
  ECL_ATTACK_SQUARE = 3
} ecl_attack_kind;

typedef struct ecl_attack_config ecl_attack_config;

/* Starts from the per-attack defaults. */
ECL_API ecl_status ecl_attack_config_create(ecl_attack_kind kind,
                                            ecl_attack_config** out);
/* Numeric knobs by name; booleans take 0/1. Unknown keys are rejected.
 * Shared: "beta", "max_iterations", "success_threshold", "seed".
 * eclipse: "epsilon0", "sample_size", "kernel_size", "sigma",
 *          "probe_magnitude", "min_area", "epsilon_decay", "epsilon_floor",
 *          "tau_step", "tau_cap", "sampled_fraction_cap", "blur_gradients",
 *          "use_heatmap_mask".
 * simba / simba-dct: "step"; simba-dct: "freq_fraction".
 * square: "p_init". */
ECL_API ecl_status ecl_attack_config_set(ecl_attack_config* config, const char* key,
                                         double value);
ECL_API void ecl_attack_config_free(ecl_attack_config* config);

typedef struct ecl_outcome ecl_outcome;

typedef struct ecl_trace_point {
  int t;
  double fitness;
  double epsilon;
  double tau;
  int32_t mask_area;
  uint64_t queries;          /* ledger total after this iteration */
  uint64_t queries_uncached; /* same, counting cache hits as real queries */
  int accepted;
} ecl_trace_point;

/* heatmap may be NULL for the baseline attacks; the gradient attack
 * requires one unless "use_heatmap_mask" was set to 0. */
ECL_API ecl_status ecl_attack_run(const ecl_oracle* oracle,
                                  const ecl_heatmap* heatmap,
                                  const ecl_image* original,
                                  const char* target_label,
                                  const ecl_attack_config* config,
                                  ecl_outcome** out);

ECL_API int ecl_outcome_success(const ecl_outcome* outcome);
ECL_API int ecl_outcome_iterations(const ecl_outcome* outcome);
ECL_API double ecl_outcome_final_fitness(const ecl_outcome* outcome);
ECL_API uint64_t ecl_outcome_queries(const ecl_outcome* outcome);
ECL_API uint64_t ecl_outcome_queries_uncached(const ecl_outcome* outcome);
/* phase: 0 = initial scoring, 1 = gradient probes, 2 = fitness checks. */
ECL_API uint64_t ecl_outcome_queries_phase(const ecl_outcome* outcome, int phase);
ECL_API ecl_status ecl_outcome_adversarial(const ecl_outcome* outcome,
                                           ecl_image** out);
ECL_API size_t ecl_outcome_trace_len(const ecl_outcome* outcome);
ECL_API ecl_status ecl_outcome_trace_get(const ecl_outcome* outcome, size_t index,
                                         ecl_trace_point* out);
ECL_API void ecl_outcome_free(ecl_outcome* outcome);

/* ------------------------------------------- compression robustness (P1) */

/* Exactly two oracle queries: the image and its JPEG round-trip. */
ECL_API ecl_status ecl_compression_loss(const ecl_oracle* oracle,
                                        const ecl_image* adversarial,
                                        const char* target_label, int quality,
                                        double* out_pre, double* out_post,
                                        double* out_loss);

typedef struct ecl_p1_report {
  int quality;
  int n;
  double median_loss;
  double low_loss_pct;   /* loss < 0.3 */
  double surviving_pct;  /* loss < 0.05 */
} ecl_p1_report;

ECL_API ecl_status ecl_p1_aggregate(const double* losses, size_t n, int quality,
                                    ecl_p1_report* out);

/* --------------------------------------------- detection stealthness (P2) */

ECL_API ecl_status ecl_spectral_features(const ecl_image* image, int bands,
                                         double* out_features);
/* The recipe string persisted alongside feature matrices. */
ECL_API const char* ecl_spectral_recipe(void);

typedef struct ecl_detector ecl_detector;
typedef struct ecl_cv_report ecl_cv_report;

typedef struct ecl_fold_metrics {
  double accuracy;
  double precision;
  double recall;
  double f1;
  double roc_auc;
} ecl_fold_metrics;

/* benign/adversarial are row-major matrices of n_* rows by `bands` columns.
 * Either output pointer may be NULL if only the other is wanted. */
ECL_API ecl_status ecl_detector_train(const double* benign, size_t n_benign,
                                      const double* adversarial, size_t n_adversarial,
                                      int bands, int degree, double c, int folds,
                                      uint64_t seed, ecl_detector** out_model,
                                      ecl_cv_report** out_report);
ECL_API ecl_status ecl_detector_score(const ecl_detector* detector,
                                      const double* features, int bands,
                                      double* out_margin);
ECL_API ecl_status ecl_detector_save(const ecl_detector* detector, const char* path);
ECL_API ecl_status ecl_detector_load(const char* path, ecl_detector** out);
ECL_API void ecl_detector_free(ecl_detector* detector);

ECL_API int ecl_cv_report_folds(const ecl_cv_report* report);
ECL_API ecl_status ecl_cv_report_fold(const ecl_cv_report* report, int fold,
                                      ecl_fold_metrics* out);
/* Population mean/stddev across folds of one metric column. */
ECL_API ecl_status ecl_cv_report_summary(const ecl_cv_report* report,
                                         ecl_fold_metrics* out_mean,
                                         ecl_fold_metrics* out_stddev);
ECL_API void ecl_cv_report_free(ecl_cv_report* report);

/* labels: nonzero = positive class. */
ECL_API ecl_status ecl_roc_auc(const double* scores, const int* labels, size_t n,
                               double* out);

typedef struct ecl_query_stats {
  int successes;
  int failures;
  int has_quartiles; /* 0 when every run failed */
  double median;
  double q1;
  double q3;
  double iqr;
} ecl_query_stats;

ECL_API ecl_status ecl_query_stats_from_counts(const int64_t* success_queries,
                                               size_t n, int failures,
                                               ecl_query_stats* out);

/* -------------------------------------------------------------- fixtures */

/* Writes a demo corpus (PNGs + manifest.csv + oracle.json + heatmap.png)
 * for end-to-end runs without a remote victim. */
ECL_API ecl_status ecl_write_desk_corpus(const char* dir, int height, int width,
                                         int count, uint64_t seed);

#ifdef __cplusplus
}
#endif

#endif /* ECLIPSE_ECLIPSE_C_H */
