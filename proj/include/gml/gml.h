/*
 * C interface to the gml library: prefix-hypothesis model selection with
 * penalized empirical risk, the dyadic premeasure, the generalization-bound
 * stack and the Monte Carlo verification harness.
 *
 * Conventions:
 *  - Every fallible call returns gml_status; outputs go through pointers and
 *    are only written on GML_OK.
 *  - On failure, gml_last_error() returns a message for the calling thread.
 *  - Handles are opaque and owned by the caller; release each with its
 *    matching *_free. Strings returned through char** are released with
 *    gml_string_free.
 *  - Handles are immutable after creation and safe to share across threads.
 */
#ifndef GML_GML_H_
#define GML_GML_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(GML_BUILDING_LIBRARY)
#define GML_API __declspec(dllexport)
#else
#define GML_API __declspec(dllimport)
#endif
#else
#define GML_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gml_status {
  GML_OK = 0,
  GML_ERR_INVALID_ARGUMENT = 1,
  GML_ERR_DOMAIN = 2,
  GML_ERR_INSTANCE_TOO_SHORT = 3,
  GML_ERR_DEPTH_CAP = 4,
  GML_ERR_DISJOINTNESS = 5,
  GML_ERR_ZERO_WEIGHT = 6,
  GML_ERR_OVERFLOW = 7,
  GML_ERR_PARSE = 8,
  GML_ERR_CONFIG = 9,
  GML_ERR_IO = 10,
  GML_ERR_INTERNAL = 11
} gml_status;

typedef struct gml_hypothesis gml_hypothesis;
typedef struct gml_weights gml_weights;
typedef struct gml_sample gml_sample;
typedef struct gml_distribution gml_distribution;
typedef struct gml_selection gml_selection;

/* numerator / 2^log2_denominator, reduced. */
typedef struct gml_dyadic {
  uint64_t numerator;
  unsigned log2_denominator;
} gml_dyadic;

typedef enum gml_set_op {
  GML_SET_UNION = 0,
  GML_SET_INTERSECTION = 1,
  GML_SET_DIFFERENCE = 2,
  GML_SET_SYMMETRIC_DIFFERENCE = 3
} gml_set_op;

typedef enum gml_rule {
  GML_RULE_GML = 0,
  GML_RULE_UNION_ERM = 1,
  GML_RULE_HOLDOUT = 2,
  GML_RULE_FIXED_N = 3
} gml_rule;

typedef enum gml_report_format { GML_FORMAT_CSV = 0, GML_FORMAT_JSON = 1 } gml_report_format;

GML_API const char* gml_version(void);
GML_API const char* gml_status_string(gml_status status);
GML_API const char* gml_last_error(void);
GML_API void gml_string_free(char* s);

/* Depth cap: default 20, GML_DEPTH_CAP overrides at first use. */
GML_API unsigned gml_depth_cap(void);
GML_API gml_status gml_set_depth_cap(unsigned cap);

/* ---- hypotheses ------------------------------------------------------- */

/* Text form "n:c1,c2,..." e.g. "2:00,11"; "2:" is empty. */
GML_API gml_status gml_hypothesis_parse(const char* text, gml_hypothesis** out);
GML_API void gml_hypothesis_free(gml_hypothesis* h);
GML_API gml_status gml_hypothesis_to_string(const gml_hypothesis* h, char** out);
GML_API unsigned gml_hypothesis_depth(const gml_hypothesis* h);
GML_API size_t gml_hypothesis_cell_count(const gml_hypothesis* h);
/* bits: '0'/'1' string; *label receives 0 or 1. */
GML_API gml_status gml_hypothesis_evaluate(const gml_hypothesis* h, const char* bits, int* label);
GML_API gml_status gml_hypothesis_refine(const gml_hypothesis* h, unsigned depth,
                                         gml_hypothesis** out);
GML_API gml_status gml_hypothesis_complement(const gml_hypothesis* h, gml_hypothesis** out);
GML_API gml_status gml_hypothesis_combine(const gml_hypothesis* a, const gml_hypothesis* b,
                                          gml_set_op op, gml_hypothesis** out);
GML_API gml_status gml_hypothesis_equivalent(const gml_hypothesis* a, const gml_hypothesis* b,
                                             int* equivalent);

/* ---- premeasure ------------------------------------------------------- */

GML_API gml_status gml_premeasure(const gml_hypothesis* h, gml_dyadic* out);
GML_API gml_status gml_dyadic_to_string(gml_dyadic d, char** out);
GML_API double gml_dyadic_to_double(gml_dyadic d);
/* Fails with GML_ERR_DISJOINTNESS when two inputs overlap. */
GML_API gml_status gml_check_finite_additivity(const gml_hypothesis* const* hs, size_t count,
                                               int* holds, gml_dyadic* union_measure,
                                               gml_dyadic* sum_of_measures);
/* out must hold `count` entries. */
GML_API gml_status gml_shrinking_intersection_measures(unsigned count, gml_dyadic* out);

/* ---- weights and bounds ----------------------------------------------- */

GML_API gml_status gml_weights_harmonic(gml_weights** out);
GML_API gml_status gml_weights_geometric(gml_weights** out);
GML_API gml_status gml_weights_custom(const double* table, size_t count, int geometric_tail,
                                      gml_weights** out);
/* "harmonic", "geometric", or a path to a weights JSON file. */
GML_API gml_status gml_weights_from_spec(const char* spec, gml_weights** out);
GML_API void gml_weights_free(gml_weights* w);
GML_API gml_status gml_weights_value(const gml_weights* w, unsigned n, double* out);

GML_API gml_status gml_class_size(unsigned n, uint64_t* out);
GML_API gml_status gml_log_class_size(unsigned n, double* out);
GML_API gml_status gml_uc_sample_complexity(double log_class_size, double epsilon, double delta,
                                            uint64_t* uniform_convergence, uint64_t* agnostic);
GML_API gml_status gml_epsilon_n(unsigned n, uint64_t m, double delta, double* value,
                                 int* saturated);
GML_API gml_status gml_penalty(unsigned n, uint64_t m, double delta, const gml_weights* w,
                               double* out);
GML_API gml_status gml_vc_union_bound(unsigned d_max, unsigned r, double* out);
GML_API gml_status gml_nul_sample_complexity(unsigned n, double epsilon, double delta,
                                             const gml_weights* w, uint64_t* out);
GML_API gml_status gml_nul_gap_bound(unsigned n, double epsilon, double c, double* out);
GML_API gml_status gml_vc_dim_bruteforce(unsigned n, unsigned max_points, unsigned* out);

/* ---- data ------------------------------------------------------------- */

GML_API gml_status gml_sample_load_jsonl(const char* path, gml_sample** out);
GML_API gml_status gml_sample_save_jsonl(const gml_sample* s, const char* path);
GML_API gml_status gml_sample_to_jsonl(const gml_sample* s, char** out);
GML_API size_t gml_sample_size(const gml_sample* s);
GML_API void gml_sample_free(gml_sample* s);

GML_API gml_status gml_distribution_parse_json(const char* json, gml_distribution** out);
GML_API gml_status gml_distribution_load(const char* path, gml_distribution** out);
GML_API void gml_distribution_free(gml_distribution* d);
GML_API gml_status gml_distribution_sample(const gml_distribution* d, uint64_t m, uint64_t seed,
                                           gml_sample** out);

/* exact (nullable) receives "p/q". */
GML_API gml_status gml_true_risk(const gml_hypothesis* h, const gml_distribution* d,
                                 double* value, char** exact);
GML_API gml_status gml_empirical_risk(const gml_hypothesis* h, const gml_sample* s,
                                      double* value, char** exact);

/* ---- learning --------------------------------------------------------- */

typedef struct gml_select_options {
  gml_rule rule;
  double delta;
  const gml_weights* weights; /* NULL selects geometric */
  unsigned n_min;             /* n_min = n_max = 0 selects the default range */
  unsigned n_max;
  double split_ratio;         /* holdout only */
  unsigned fixed_n;           /* fixed-n only */
  int unoccupied_label;       /* 0 or 1 */
} gml_select_options;

GML_API void gml_select_options_init(gml_select_options* options);
GML_API gml_status gml_select(const gml_sample* s, const gml_select_options* options,
                              gml_selection** out);
GML_API void gml_selection_free(gml_selection* r);
GML_API unsigned gml_selection_chosen_n(const gml_selection* r);
GML_API double gml_selection_empirical_risk(const gml_selection* r);
GML_API double gml_selection_penalty(const gml_selection* r);
GML_API double gml_selection_objective(const gml_selection* r);
GML_API gml_status gml_selection_chosen(const gml_selection* r, gml_hypothesis** out);
GML_API gml_status gml_selection_to_json(const gml_selection* r, char** out);
GML_API gml_status gml_selection_trace_csv(const gml_selection* r, char** out);

GML_API gml_status gml_erm_in_class(unsigned n, const gml_sample* s, gml_hypothesis** out,
                                    double* risk);
GML_API gml_status gml_sup_deviation(unsigned n, const gml_sample* s, const gml_distribution* d,
                                     double* out);

/* ---- verification ----------------------------------------------------- */

GML_API gml_status gml_oracle_check(unsigned n, uint64_t samples, uint64_t seed, uint64_t max_m,
                                    uint64_t* passed, uint64_t* total);

/* Writes violation.* and/or consistency.* into out_dir. threads = 0 uses
 * every hardware thread. */
GML_API gml_status gml_experiment_run(const char* config_path, const char* out_dir,
                                      gml_report_format format, int paranoid, unsigned threads);

#ifdef __cplusplus
}
#endif

#endif /* GML_GML_H_ */
