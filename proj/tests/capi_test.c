/* Exercises the C interface from plain C through the shared library. */
#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "gml/gml.h"

static int failures = 0;

#define EXPECT(cond)                                                   \
  do {                                                                 \
    if (!(cond)) {                                                     \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                      \
    }                                                                  \
  } while (0)

#define EXPECT_OK(call) EXPECT((call) == GML_OK)

static void test_hypotheses(void) {
  gml_hypothesis* h = NULL;
  gml_hypothesis* c = NULL;
  gml_hypothesis* r = NULL;
  gml_hypothesis* u = NULL;
  gml_hypothesis* bad = NULL;
  char* text = NULL;
  int label = -1;
  int eq = 0;

  EXPECT_OK(gml_hypothesis_parse("2:00,01,10", &h));
  EXPECT(gml_hypothesis_depth(h) == 2);
  EXPECT(gml_hypothesis_cell_count(h) == 3);
  EXPECT_OK(gml_hypothesis_evaluate(h, "1011", &label));
  EXPECT(label == 1);
  EXPECT(gml_hypothesis_evaluate(h, "1", &label) == GML_ERR_INSTANCE_TOO_SHORT);
  EXPECT(strstr(gml_last_error(), "length") != NULL);

  EXPECT_OK(gml_hypothesis_complement(h, &c));
  EXPECT_OK(gml_hypothesis_to_string(c, &text));
  EXPECT(strcmp(text, "2:11") == 0);
  gml_string_free(text);

  EXPECT_OK(gml_hypothesis_refine(c, 3, &r));
  EXPECT(gml_hypothesis_cell_count(r) == 2);
  EXPECT_OK(gml_hypothesis_equivalent(c, r, &eq));
  EXPECT(eq == 1);
  EXPECT(gml_hypothesis_refine(c, 1, &u) == GML_ERR_INVALID_ARGUMENT);

  EXPECT_OK(gml_hypothesis_combine(h, r, GML_SET_UNION, &u));
  EXPECT(gml_hypothesis_cell_count(u) == 8);

  EXPECT(gml_hypothesis_parse("2:0", &bad) == GML_ERR_PARSE);
  EXPECT(gml_hypothesis_parse(NULL, &bad) == GML_ERR_INVALID_ARGUMENT);
  EXPECT(bad == NULL);

  gml_hypothesis_free(u);
  gml_hypothesis_free(r);
  gml_hypothesis_free(c);
  gml_hypothesis_free(h);
  gml_hypothesis_free(NULL);
}

static void test_measure(void) {
  gml_hypothesis* a = NULL;
  gml_hypothesis* b = NULL;
  gml_dyadic d;
  gml_dyadic seq[5];
  gml_dyadic lhs;
  gml_dyadic rhs;
  char* text = NULL;
  int holds = 0;
  unsigned k;

  EXPECT_OK(gml_hypothesis_parse("2:00,01,10", &a));
  EXPECT_OK(gml_premeasure(a, &d));
  EXPECT(d.numerator == 3 && d.log2_denominator == 2);
  EXPECT_OK(gml_dyadic_to_string(d, &text));
  EXPECT(strcmp(text, "3/4") == 0);
  gml_string_free(text);
  EXPECT(gml_dyadic_to_double(d) == 0.75);
  gml_hypothesis_free(a);

  EXPECT_OK(gml_hypothesis_parse("1:0", &a));
  EXPECT_OK(gml_hypothesis_parse("1:1", &b));
  {
    const gml_hypothesis* hs[2];
    hs[0] = a;
    hs[1] = b;
    EXPECT_OK(gml_check_finite_additivity(hs, 2, &holds, &lhs, &rhs));
    EXPECT(holds == 1);
    EXPECT(lhs.numerator == 1 && lhs.log2_denominator == 0);
  }
  gml_hypothesis_free(b);
  EXPECT_OK(gml_hypothesis_parse("2:01", &b));
  {
    const gml_hypothesis* hs[2];
    hs[0] = a;
    hs[1] = b;
    EXPECT(gml_check_finite_additivity(hs, 2, &holds, &lhs, &rhs) == GML_ERR_DISJOINTNESS);
  }
  gml_hypothesis_free(b);
  gml_hypothesis_free(a);

  EXPECT_OK(gml_shrinking_intersection_measures(5, seq));
  for (k = 0; k < 5; ++k) {
    EXPECT(seq[k].numerator == 1 && seq[k].log2_denominator == k + 1);
  }
  EXPECT(gml_shrinking_intersection_measures(gml_depth_cap(), seq) == GML_ERR_DEPTH_CAP);
}

static void test_bounds(void) {
  gml_weights* geo = NULL;
  gml_weights* harm = NULL;
  gml_weights* zero_tail = NULL;
  double table[1] = {0.5};
  double v = 0.0;
  int saturated = 1;
  uint64_t uc = 0;
  uint64_t ag = 0;
  uint64_t size = 0;
  unsigned vc = 0;

  EXPECT_OK(gml_weights_geometric(&geo));
  EXPECT_OK(gml_weights_harmonic(&harm));
  EXPECT_OK(gml_penalty(1, 200, 0.1, geo, &v));
  EXPECT(fabs(v - 0.112641) < 1e-5);
  EXPECT_OK(gml_penalty(1, 200, 0.1, harm, &v));
  EXPECT(fabs(v - 0.110451) < 1e-5);
  EXPECT_OK(gml_epsilon_n(1, 200, 0.1, &v, &saturated));
  EXPECT(fabs(v - 0.104667) < 1e-5);
  EXPECT(saturated == 0);
  EXPECT(gml_epsilon_n(1, 200, 1.0, &v, &saturated) == GML_ERR_DOMAIN);
  EXPECT_OK(gml_uc_sample_complexity(log(4.0), 0.1, 0.1, &uc, &ag));
  EXPECT(uc == 220 && ag == 877);
  EXPECT_OK(gml_class_size(3, &size));
  EXPECT(size == 256);
  EXPECT(gml_class_size(6, &size) == GML_ERR_OVERFLOW);
  EXPECT_OK(gml_nul_sample_complexity(1, 0.2, 0.1, geo, &uc));
  EXPECT(uc == 254);
  EXPECT_OK(gml_vc_union_bound(2, 2, &v));
  EXPECT(fabs(v - 12.4766) < 1e-4);
  EXPECT_OK(gml_nul_gap_bound(3, 0.1, 1.0, &v));
  EXPECT(fabs(v - 1433.4076) < 1e-3);
  EXPECT_OK(gml_vc_dim_bruteforce(2, 5, &vc));
  EXPECT(vc == 4);

  EXPECT_OK(gml_weights_custom(table, 1, 0, &zero_tail));
  EXPECT(gml_penalty(2, 200, 0.1, zero_tail, &v) == GML_ERR_ZERO_WEIGHT);
  EXPECT(gml_weights_from_spec("nope", &zero_tail) == GML_ERR_IO);

  gml_weights_free(zero_tail);
  gml_weights_free(harm);
  gml_weights_free(geo);
}

static void test_learning(void) {
  gml_distribution* d = NULL;
  gml_sample* s = NULL;
  gml_selection* sel = NULL;
  gml_hypothesis* chosen = NULL;
  gml_select_options opts;
  char* text = NULL;
  double risk = 0.0;
  uint64_t passed = 0;
  uint64_t total = 0;

  EXPECT_OK(gml_distribution_parse_json(
      "{\"bit_model\":\"uniform\",\"target\":\"1:1\",\"noise\":\"0\",\"length\":6}", &d));
  EXPECT_OK(gml_distribution_sample(d, 1000, 8, &s));
  EXPECT(gml_sample_size(s) == 1000);

  gml_select_options_init(&opts);
  opts.n_min = 1;
  opts.n_max = 4;
  EXPECT_OK(gml_select(s, &opts, &sel));
  EXPECT(gml_selection_chosen_n(sel) == 1);
  EXPECT(gml_selection_empirical_risk(sel) == 0.0);
  EXPECT(fabs(gml_selection_objective(sel) - gml_selection_penalty(sel)) < 1e-15);
  EXPECT_OK(gml_selection_chosen(sel, &chosen));
  EXPECT_OK(gml_true_risk(chosen, d, &risk, &text));
  EXPECT(risk == 0.0 && strcmp(text, "0") == 0);
  gml_string_free(text);
  EXPECT_OK(gml_selection_to_json(sel, &text));
  EXPECT(strstr(text, "\"1:1\"") != NULL);
  EXPECT(strstr(text, "\"schema\": 1") != NULL);
  gml_string_free(text);
  EXPECT_OK(gml_selection_trace_csv(sel, &text));
  EXPECT(strncmp(text, "n,best_empirical_risk,penalty,objective\n", 40) == 0);
  gml_string_free(text);
  gml_selection_free(sel);

  opts.n_min = 1;
  opts.n_max = 9;
  EXPECT(gml_select(s, &opts, &sel) == GML_ERR_INSTANCE_TOO_SHORT);
  opts.n_max = 4;
  opts.rule = GML_RULE_HOLDOUT;
  opts.split_ratio = 1.5;
  EXPECT(gml_select(s, &opts, &sel) == GML_ERR_DOMAIN);

  EXPECT_OK(gml_sup_deviation(2, s, d, &risk));
  EXPECT(risk >= 0.0 && risk < 0.1);

  EXPECT(gml_sample_load_jsonl("/nonexistent/data.jsonl", &s) == GML_ERR_IO);
  EXPECT(strstr(gml_last_error(), "/nonexistent/data.jsonl") != NULL);

  EXPECT_OK(gml_oracle_check(2, 50, 1, 50, &passed, &total));
  EXPECT(passed == 50 && total == 50);

  gml_hypothesis_free(chosen);
  gml_sample_free(s);
  gml_distribution_free(d);
}

int main(void) {
  EXPECT(strcmp(gml_version(), "1.0.0") == 0);
  EXPECT(strcmp(gml_status_string(GML_OK), "ok") == 0);
  test_hypotheses();
  test_measure();
  test_bounds();
  test_learning();
  if (failures != 0) {
    fprintf(stderr, "%d failure(s)\n", failures);
    return 1;
  }
  puts("capi: all checks passed");
  return 0;
}
