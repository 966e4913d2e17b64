#include "gml/gml.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include "gml/bounds.hpp"
#include "gml/config.hpp"
#include "gml/error.hpp"
#include "gml/experiment.hpp"
#include "gml/io.hpp"
#include "gml/learner.hpp"
#include "gml/measure.hpp"
#include "gml/oracle.hpp"
#include "gml/synth.hpp"

struct gml_hypothesis {
  gml::Hypothesis rep;
};

struct gml_weights {
  gml::WeightScheme rep;
};

struct gml_sample {
  gml::LabeledSample rep;
};

struct gml_distribution {
  gml::SyntheticDistribution rep;
};

struct gml_selection {
  gml::SelectionResult rep;
  std::string rule;
};

namespace {

thread_local std::string last_error;

gml_status to_status(gml::ErrorCode code) {
  using gml::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return GML_ERR_INVALID_ARGUMENT;
    case ErrorCode::Domain: return GML_ERR_DOMAIN;
    case ErrorCode::InstanceTooShort: return GML_ERR_INSTANCE_TOO_SHORT;
    case ErrorCode::DepthCap: return GML_ERR_DEPTH_CAP;
    case ErrorCode::Disjointness: return GML_ERR_DISJOINTNESS;
    case ErrorCode::ZeroWeight: return GML_ERR_ZERO_WEIGHT;
    case ErrorCode::Overflow: return GML_ERR_OVERFLOW;
    case ErrorCode::Parse: return GML_ERR_PARSE;
    case ErrorCode::Config: return GML_ERR_CONFIG;
    case ErrorCode::Io: return GML_ERR_IO;
    case ErrorCode::Internal: return GML_ERR_INTERNAL;
  }
  return GML_ERR_INTERNAL;
}

gml_status set_error(gml_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs body, translating every exception into a status and a message.
template <typename Body>
gml_status guarded(Body&& body) {
  try {
    body();
    last_error.clear();
    return GML_OK;
  } catch (const gml::Error& e) {
    return set_error(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(GML_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(GML_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(GML_ERR_INTERNAL, "unknown exception");
  }
}

#define GML_REQUIRE(ptr)                                                              \
  do {                                                                                \
    if ((ptr) == nullptr) return set_error(GML_ERR_INVALID_ARGUMENT, #ptr " is NULL"); \
  } while (0)

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

gml_dyadic to_c(const gml::DyadicRational& d) { return {d.numerator(), d.log2_denominator()}; }

gml::SetOp to_op(gml_set_op op) {
  switch (op) {
    case GML_SET_UNION: return gml::SetOp::Union;
    case GML_SET_INTERSECTION: return gml::SetOp::Intersection;
    case GML_SET_DIFFERENCE: return gml::SetOp::Difference;
    case GML_SET_SYMMETRIC_DIFFERENCE: return gml::SetOp::SymmetricDifference;
  }
  gml::fail(gml::ErrorCode::InvalidArgument, "unknown set operation");
}

}  // namespace

extern "C" {

const char* gml_version(void) { return "1.0.0"; }

const char* gml_status_string(gml_status status) {
  switch (status) {
    case GML_OK: return "ok";
    case GML_ERR_INVALID_ARGUMENT: return "invalid argument";
    case GML_ERR_DOMAIN: return "domain error";
    case GML_ERR_INSTANCE_TOO_SHORT: return "instance too short";
    case GML_ERR_DEPTH_CAP: return "depth cap exceeded";
    case GML_ERR_DISJOINTNESS: return "disjointness violation";
    case GML_ERR_ZERO_WEIGHT: return "zero weight";
    case GML_ERR_OVERFLOW: return "overflow";
    case GML_ERR_PARSE: return "parse error";
    case GML_ERR_CONFIG: return "config error";
    case GML_ERR_IO: return "I/O error";
    case GML_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* gml_last_error(void) { return last_error.c_str(); }

void gml_string_free(char* s) { std::free(s); }

unsigned gml_depth_cap(void) { return gml::depth_cap(); }

gml_status gml_set_depth_cap(unsigned cap) {
  return guarded([&] { gml::set_depth_cap(cap); });
}

gml_status gml_hypothesis_parse(const char* text, gml_hypothesis** out) {
  GML_REQUIRE(text);
  GML_REQUIRE(out);
  return guarded([&] { *out = new gml_hypothesis{gml::Hypothesis::parse(text)}; });
}

void gml_hypothesis_free(gml_hypothesis* h) { delete h; }

gml_status gml_hypothesis_to_string(const gml_hypothesis* h, char** out) {
  GML_REQUIRE(h);
  GML_REQUIRE(out);
  return guarded([&] { *out = copy_string(h->rep.to_string()); });
}

unsigned gml_hypothesis_depth(const gml_hypothesis* h) { return h ? h->rep.depth() : 0; }

size_t gml_hypothesis_cell_count(const gml_hypothesis* h) { return h ? h->rep.cell_count() : 0; }

gml_status gml_hypothesis_evaluate(const gml_hypothesis* h, const char* bits, int* label) {
  GML_REQUIRE(h);
  GML_REQUIRE(bits);
  GML_REQUIRE(label);
  return guarded([&] { *label = gml::to_int(gml::evaluate(h->rep, gml::BitString::parse(bits))); });
}

gml_status gml_hypothesis_refine(const gml_hypothesis* h, unsigned depth, gml_hypothesis** out) {
  GML_REQUIRE(h);
  GML_REQUIRE(out);
  return guarded([&] { *out = new gml_hypothesis{gml::refine(h->rep, depth)}; });
}

gml_status gml_hypothesis_complement(const gml_hypothesis* h, gml_hypothesis** out) {
  GML_REQUIRE(h);
  GML_REQUIRE(out);
  return guarded([&] { *out = new gml_hypothesis{gml::complement(h->rep)}; });
}

gml_status gml_hypothesis_combine(const gml_hypothesis* a, const gml_hypothesis* b, gml_set_op op,
                                  gml_hypothesis** out) {
  GML_REQUIRE(a);
  GML_REQUIRE(b);
  GML_REQUIRE(out);
  return guarded([&] { *out = new gml_hypothesis{gml::combine(a->rep, b->rep, to_op(op))}; });
}

gml_status gml_hypothesis_equivalent(const gml_hypothesis* a, const gml_hypothesis* b,
                                     int* equivalent) {
  GML_REQUIRE(a);
  GML_REQUIRE(b);
  GML_REQUIRE(equivalent);
  return guarded([&] { *equivalent = gml::equivalent(a->rep, b->rep) ? 1 : 0; });
}

gml_status gml_premeasure(const gml_hypothesis* h, gml_dyadic* out) {
  GML_REQUIRE(h);
  GML_REQUIRE(out);
  return guarded([&] { *out = to_c(gml::premeasure(h->rep)); });
}

gml_status gml_dyadic_to_string(gml_dyadic d, char** out) {
  GML_REQUIRE(out);
  return guarded([&] {
    *out = copy_string(gml::DyadicRational(d.numerator, d.log2_denominator).to_string());
  });
}

double gml_dyadic_to_double(gml_dyadic d) {
  return std::ldexp(static_cast<double>(d.numerator), -static_cast<int>(d.log2_denominator));
}

gml_status gml_check_finite_additivity(const gml_hypothesis* const* hs, size_t count, int* holds,
                                       gml_dyadic* union_measure, gml_dyadic* sum_of_measures) {
  if (count > 0) GML_REQUIRE(hs);
  GML_REQUIRE(holds);
  return guarded([&] {
    std::vector<gml::Hypothesis> items;
    for (size_t i = 0; i < count; ++i) {
      if (hs[i] == nullptr) gml::fail(gml::ErrorCode::InvalidArgument, "NULL hypothesis in list");
      items.push_back(hs[i]->rep);
    }
    const gml::AdditivityWitness w = gml::check_finite_additivity(items);
    *holds = w.holds ? 1 : 0;
    if (union_measure) *union_measure = to_c(w.union_measure);
    if (sum_of_measures) *sum_of_measures = to_c(w.sum_of_measures);
  });
}

gml_status gml_shrinking_intersection_measures(unsigned count, gml_dyadic* out) {
  GML_REQUIRE(out);
  return guarded([&] {
    const auto values = gml::shrinking_intersection_measures(count);
    for (size_t i = 0; i < values.size(); ++i) out[i] = to_c(values[i]);
  });
}

gml_status gml_weights_harmonic(gml_weights** out) {
  GML_REQUIRE(out);
  return guarded([&] { *out = new gml_weights{gml::WeightScheme::harmonic()}; });
}

gml_status gml_weights_geometric(gml_weights** out) {
  GML_REQUIRE(out);
  return guarded([&] { *out = new gml_weights{gml::WeightScheme::geometric()}; });
}

gml_status gml_weights_custom(const double* table, size_t count, int geometric_tail,
                              gml_weights** out) {
  if (count > 0) GML_REQUIRE(table);
  GML_REQUIRE(out);
  return guarded([&] {
    *out = new gml_weights{gml::WeightScheme::custom(
        std::vector<double>(table, table + count),
        geometric_tail ? gml::WeightScheme::Tail::Geometric : gml::WeightScheme::Tail::Zero)};
  });
}

gml_status gml_weights_from_spec(const char* spec, gml_weights** out) {
  GML_REQUIRE(spec);
  GML_REQUIRE(out);
  return guarded([&] { *out = new gml_weights{gml::weights_from_name_or_file(spec)}; });
}

void gml_weights_free(gml_weights* w) { delete w; }

gml_status gml_weights_value(const gml_weights* w, unsigned n, double* out) {
  GML_REQUIRE(w);
  GML_REQUIRE(out);
  return guarded([&] { *out = w->rep.weight(n); });
}

gml_status gml_class_size(unsigned n, uint64_t* out) {
  GML_REQUIRE(out);
  return guarded([&] { *out = gml::class_size(n); });
}

gml_status gml_log_class_size(unsigned n, double* out) {
  GML_REQUIRE(out);
  return guarded([&] { *out = gml::log_class_size(n); });
}

gml_status gml_uc_sample_complexity(double log_class_size, double epsilon, double delta,
                                    uint64_t* uniform_convergence, uint64_t* agnostic) {
  return guarded([&] {
    const auto uc = gml::uc_sample_complexity(log_class_size, epsilon, delta);
    const auto ag = gml::agnostic_sample_complexity(log_class_size, epsilon, delta);
    if (uniform_convergence) *uniform_convergence = uc;
    if (agnostic) *agnostic = ag;
  });
}

gml_status gml_epsilon_n(unsigned n, uint64_t m, double delta, double* value, int* saturated) {
  GML_REQUIRE(value);
  return guarded([&] {
    const auto e = gml::epsilon_n(n, m, delta);
    *value = e.value;
    if (saturated) *saturated = e.saturated ? 1 : 0;
  });
}

gml_status gml_penalty(unsigned n, uint64_t m, double delta, const gml_weights* w, double* out) {
  GML_REQUIRE(w);
  GML_REQUIRE(out);
  return guarded([&] { *out = gml::gml_penalty(n, m, delta, w->rep); });
}

gml_status gml_vc_union_bound(unsigned d_max, unsigned r, double* out) {
  GML_REQUIRE(out);
  return guarded([&] { *out = gml::vc_union_bound(d_max, r); });
}

gml_status gml_nul_sample_complexity(unsigned n, double epsilon, double delta,
                                     const gml_weights* w, uint64_t* out) {
  GML_REQUIRE(w);
  GML_REQUIRE(out);
  return guarded([&] { *out = gml::nul_sample_complexity(n, epsilon, delta, w->rep); });
}

gml_status gml_nul_gap_bound(unsigned n, double epsilon, double c, double* out) {
  GML_REQUIRE(out);
  return guarded([&] { *out = gml::nul_gap_bound(n, epsilon, c); });
}

gml_status gml_vc_dim_bruteforce(unsigned n, unsigned max_points, unsigned* out) {
  GML_REQUIRE(out);
  return guarded([&] { *out = gml::vc_dim_bruteforce(n, max_points); });
}

gml_status gml_sample_load_jsonl(const char* path, gml_sample** out) {
  GML_REQUIRE(path);
  GML_REQUIRE(out);
  return guarded([&] { *out = new gml_sample{gml::read_jsonl(path)}; });
}

gml_status gml_sample_save_jsonl(const gml_sample* s, const char* path) {
  GML_REQUIRE(s);
  GML_REQUIRE(path);
  return guarded([&] { gml::write_jsonl(s->rep, std::filesystem::path(path)); });
}

gml_status gml_sample_to_jsonl(const gml_sample* s, char** out) {
  GML_REQUIRE(s);
  GML_REQUIRE(out);
  return guarded([&] {
    std::ostringstream buf;
    gml::write_jsonl(s->rep, buf);
    *out = copy_string(buf.str());
  });
}

size_t gml_sample_size(const gml_sample* s) { return s ? s->rep.size() : 0; }

void gml_sample_free(gml_sample* s) { delete s; }

gml_status gml_distribution_parse_json(const char* json, gml_distribution** out) {
  GML_REQUIRE(json);
  GML_REQUIRE(out);
  return guarded([&] {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(json);
    } catch (const nlohmann::json::parse_error& e) {
      gml::fail(gml::ErrorCode::Config, std::string("distribution: ") + e.what());
    }
    *out = new gml_distribution{gml::parse_distribution(j)};
  });
}

gml_status gml_distribution_load(const char* path, gml_distribution** out) {
  GML_REQUIRE(path);
  GML_REQUIRE(out);
  return guarded([&] { *out = new gml_distribution{gml::load_distribution(path)}; });
}

void gml_distribution_free(gml_distribution* d) { delete d; }

gml_status gml_distribution_sample(const gml_distribution* d, uint64_t m, uint64_t seed,
                                   gml_sample** out) {
  GML_REQUIRE(d);
  GML_REQUIRE(out);
  return guarded([&] { *out = new gml_sample{gml::sample(d->rep, m, seed)}; });
}

gml_status gml_true_risk(const gml_hypothesis* h, const gml_distribution* d, double* value,
                         char** exact) {
  GML_REQUIRE(h);
  GML_REQUIRE(d);
  return guarded([&] {
    const gml::Rational r = gml::true_risk(h->rep, d->rep);
    if (value) *value = gml::to_double(r);
    if (exact) *exact = copy_string(gml::format_rational(r));
  });
}

gml_status gml_empirical_risk(const gml_hypothesis* h, const gml_sample* s, double* value,
                              char** exact) {
  GML_REQUIRE(h);
  GML_REQUIRE(s);
  return guarded([&] {
    const gml::Rational r = gml::empirical_risk(h->rep, s->rep);
    if (value) *value = gml::to_double(r);
    if (exact) *exact = copy_string(gml::format_rational(r));
  });
}

void gml_select_options_init(gml_select_options* options) {
  if (options == nullptr) return;
  options->rule = GML_RULE_GML;
  options->delta = 0.1;
  options->weights = nullptr;
  options->n_min = 0;
  options->n_max = 0;
  options->split_ratio = 0.8;
  options->fixed_n = 1;
  options->unoccupied_label = 0;
}

gml_status gml_select(const gml_sample* s, const gml_select_options* options, gml_selection** out) {
  GML_REQUIRE(s);
  GML_REQUIRE(options);
  GML_REQUIRE(out);
  return guarded([&] {
    gml::IndexRange range{options->n_min, options->n_max};
    if (options->n_min == 0 && options->n_max == 0) range = gml::default_index_range(s->rep.size());
    if (options->unoccupied_label != 0 && options->unoccupied_label != 1) {
      gml::fail(gml::ErrorCode::InvalidArgument, "unoccupied_label must be 0 or 1");
    }
    gml::ErmOptions erm;
    erm.unoccupied = options->unoccupied_label == 1 ? gml::Label::One : gml::Label::Zero;
    const gml::WeightScheme weights =
        options->weights ? options->weights->rep : gml::WeightScheme::geometric();
    auto result = std::make_unique<gml_selection>();
    switch (options->rule) {
      case GML_RULE_GML:
        result->rep = gml::gml_select(s->rep, options->delta, weights, range, erm);
        result->rule = "gml";
        break;
      case GML_RULE_UNION_ERM:
        result->rep = gml::unpenalized_union_erm(s->rep, range, erm);
        result->rule = "union-erm";
        break;
      case GML_RULE_HOLDOUT:
        result->rep = gml::holdout_select(s->rep, options->split_ratio, range, erm);
        result->rule = "holdout";
        break;
      case GML_RULE_FIXED_N:
        result->rep = gml::fixed_n_select(s->rep, options->fixed_n, erm);
        result->rule = "fixed-n";
        break;
      default:
        gml::fail(gml::ErrorCode::InvalidArgument, "unknown selection rule");
    }
    *out = result.release();
  });
}

void gml_selection_free(gml_selection* r) { delete r; }

unsigned gml_selection_chosen_n(const gml_selection* r) { return r ? r->rep.chosen_n : 0; }

double gml_selection_empirical_risk(const gml_selection* r) {
  return r ? gml::to_double(r->rep.empirical_risk) : 0.0;
}

double gml_selection_penalty(const gml_selection* r) { return r ? r->rep.penalty : 0.0; }

double gml_selection_objective(const gml_selection* r) { return r ? r->rep.objective : 0.0; }

gml_status gml_selection_chosen(const gml_selection* r, gml_hypothesis** out) {
  GML_REQUIRE(r);
  GML_REQUIRE(out);
  return guarded([&] { *out = new gml_hypothesis{r->rep.chosen}; });
}

gml_status gml_selection_to_json(const gml_selection* r, char** out) {
  GML_REQUIRE(r);
  GML_REQUIRE(out);
  return guarded([&] { *out = copy_string(gml::selection_to_json(r->rep, r->rule).dump(2)); });
}

gml_status gml_selection_trace_csv(const gml_selection* r, char** out) {
  GML_REQUIRE(r);
  GML_REQUIRE(out);
  return guarded([&] { *out = copy_string(gml::trace_to_csv(r->rep)); });
}

gml_status gml_erm_in_class(unsigned n, const gml_sample* s, gml_hypothesis** out, double* risk) {
  GML_REQUIRE(s);
  GML_REQUIRE(out);
  return guarded([&] {
    gml::ErmResult fit = gml::erm_in_class(n, s->rep);
    if (risk) *risk = gml::to_double(fit.risk);
    *out = new gml_hypothesis{std::move(fit.hypothesis)};
  });
}

gml_status gml_sup_deviation(unsigned n, const gml_sample* s, const gml_distribution* d,
                             double* out) {
  GML_REQUIRE(s);
  GML_REQUIRE(d);
  GML_REQUIRE(out);
  return guarded([&] { *out = gml::to_double(gml::sup_deviation(n, s->rep, d->rep)); });
}

gml_status gml_oracle_check(unsigned n, uint64_t samples, uint64_t seed, uint64_t max_m,
                            uint64_t* passed, uint64_t* total) {
  GML_REQUIRE(passed);
  GML_REQUIRE(total);
  return guarded([&] {
    const auto report = gml::oracle_check(n, samples, seed, max_m);
    *passed = report.passed;
    *total = report.total;
  });
}

gml_status gml_experiment_run(const char* config_path, const char* out_dir,
                              gml_report_format format, int paranoid, unsigned threads) {
  GML_REQUIRE(config_path);
  GML_REQUIRE(out_dir);
  return guarded([&] {
    const gml::ExperimentConfig config = gml::load_experiment_config(config_path);
    gml::RunOptions options;
    options.paranoid = paranoid != 0;
    options.threads = threads;
    gml::run_experiment_to_dir(config, options,
                               format == GML_FORMAT_JSON ? gml::ReportFormat::Json
                                                         : gml::ReportFormat::Csv,
                               out_dir);
  });
}

}  // extern "C"
