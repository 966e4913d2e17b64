// Command-line front end. Talks to the library only through gml.h.
//
// Exit codes: 0 success, 1 usage, 2 config/parse, 3 I/O, 4 cap/domain,
// 5 verification failure or internal error.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gml/gml.h"

namespace {

enum Exit : int { kOk = 0, kUsage = 1, kConfig = 2, kIo = 3, kDomain = 4, kCheckFailed = 5 };

int exit_code(gml_status status) {
  switch (status) {
    case GML_OK: return kOk;
    case GML_ERR_INVALID_ARGUMENT: return kUsage;
    case GML_ERR_PARSE:
    case GML_ERR_CONFIG: return kConfig;
    case GML_ERR_IO: return kIo;
    case GML_ERR_DOMAIN:
    case GML_ERR_INSTANCE_TOO_SHORT:
    case GML_ERR_DEPTH_CAP:
    case GML_ERR_DISJOINTNESS:
    case GML_ERR_ZERO_WEIGHT:
    case GML_ERR_OVERFLOW: return kDomain;
    case GML_ERR_INTERNAL: return kCheckFailed;
  }
  return kCheckFailed;
}

// Carries a failed status out of a subcommand body.
struct StatusError {
  gml_status status;
};

void check(gml_status status) {
  if (status != GML_OK) throw StatusError{status};
}

struct StringDeleter {
  void operator()(char* s) const { gml_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

template <auto Free>
struct HandleDeleter {
  template <typename T>
  void operator()(T* p) const {
    Free(p);
  }
};
using Hypothesis = std::unique_ptr<gml_hypothesis, HandleDeleter<gml_hypothesis_free>>;
using Weights = std::unique_ptr<gml_weights, HandleDeleter<gml_weights_free>>;
using Sample = std::unique_ptr<gml_sample, HandleDeleter<gml_sample_free>>;
using Distribution = std::unique_ptr<gml_distribution, HandleDeleter<gml_distribution_free>>;
using Selection = std::unique_ptr<gml_selection, HandleDeleter<gml_selection_free>>;

std::string take(char* s) {
  OwnedString owned(s);
  return owned ? std::string(owned.get()) : std::string();
}

std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string dyadic_text(gml_dyadic d) {
  char* s = nullptr;
  check(gml_dyadic_to_string(d, &s));
  return take(s);
}

Weights load_weights(const std::string& spec) {
  gml_weights* w = nullptr;
  check(gml_weights_from_spec(spec.c_str(), &w));
  return Weights(w);
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (f == nullptr) {
    std::cerr << "gml: error: cannot open '" << path << "' for writing\n";
    throw StatusError{GML_ERR_IO};
  }
  const bool ok = std::fwrite(text.data(), 1, text.size(), f) == text.size();
  if (std::fclose(f) != 0 || !ok) {
    std::cerr << "gml: error: error writing '" << path << "'\n";
    throw StatusError{GML_ERR_IO};
  }
}

// ---- bounds ---------------------------------------------------------------

struct BoundsArgs {
  std::vector<unsigned> n;
  std::uint64_t m = 0;
  double delta = 0.1;
  double epsilon = 0.1;
  std::string weights = "geometric";
  std::string format = "table";
};

void run_bounds(const BoundsArgs& a) {
  const Weights w = load_weights(a.weights);
  std::vector<std::vector<std::string>> rows;
  const bool csv = a.format == "csv";
  const int digits = csv ? 12 : 6;
  for (unsigned n : a.n) {
    double wn = 0, penalty = 0, eps = 0, log_size = 0;
    int saturated = 0;
    std::uint64_t m_uc = 0, m_ag = 0;
    check(gml_weights_value(w.get(), n, &wn));
    check(gml_penalty(n, a.m, a.delta, w.get(), &penalty));
    check(gml_epsilon_n(n, a.m, a.delta, &eps, &saturated));
    check(gml_log_class_size(n, &log_size));
    check(gml_uc_sample_complexity(log_size, a.epsilon, a.delta, &m_uc, &m_ag));
    rows.push_back({std::to_string(n), std::to_string(a.m), fixed(a.delta, csv ? 12 : 4),
                    fixed(wn, digits), fixed(penalty, digits),
                    fixed(eps, digits) + (saturated && !csv ? "*" : ""), std::to_string(m_uc),
                    std::to_string(m_ag)});
  }
  const std::vector<std::string> header = {"n",       "m",         "delta", "w",
                                           "penalty", "epsilon_n", "m_uc",  "m_agnostic"};
  std::ostringstream out;
  if (csv) {
    auto line = [&](const std::vector<std::string>& cols) {
      for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
      out << "\n";
    };
    line(header);
    for (const auto& r : rows) line(r);
  } else {
    std::vector<std::size_t> width(header.size());
    for (std::size_t i = 0; i < header.size(); ++i) {
      width[i] = header[i].size();
      for (const auto& r : rows) width[i] = std::max(width[i], r[i].size());
    }
    auto line = [&](const std::vector<std::string>& cols) {
      for (std::size_t i = 0; i < cols.size(); ++i) {
        out << (i ? "  " : "") << std::string(width[i] - cols[i].size(), ' ') << cols[i];
      }
      out << "\n";
    };
    line(header);
    for (const auto& r : rows) line(r);
  }
  std::cout << out.str();
}

// ---- measure --------------------------------------------------------------

struct MeasureArgs {
  std::vector<std::string> hypotheses;
  bool additivity = false;
  unsigned shrinking = 0;
};

void run_measure(const MeasureArgs& a) {
  if (a.hypotheses.empty() && a.shrinking == 0) {
    std::cerr << "gml measure: give --hypothesis and/or --shrinking\n";
    throw StatusError{GML_ERR_INVALID_ARGUMENT};
  }
  std::vector<Hypothesis> hs;
  for (const auto& text : a.hypotheses) {
    gml_hypothesis* h = nullptr;
    check(gml_hypothesis_parse(text.c_str(), &h));
    hs.emplace_back(h);
    gml_dyadic d{};
    check(gml_premeasure(h, &d));
    std::cout << text << "\t" << dyadic_text(d) << "\t" << fixed(gml_dyadic_to_double(d), 12)
              << "\n";
  }
  if (a.additivity) {
    std::vector<const gml_hypothesis*> raw;
    for (const auto& h : hs) raw.push_back(h.get());
    int holds = 0;
    gml_dyadic u{}, s{};
    check(gml_check_finite_additivity(raw.data(), raw.size(), &holds, &u, &s));
    std::cout << "additive\t" << (holds ? "yes" : "no") << "\tunion=" << dyadic_text(u)
              << "\tsum=" << dyadic_text(s) << "\n";
  }
  if (a.shrinking > 0) {
    std::vector<gml_dyadic> values(a.shrinking);
    check(gml_shrinking_intersection_measures(a.shrinking, values.data()));
    for (unsigned k = 0; k < a.shrinking; ++k) {
      std::cout << "k=" << (k + 1) << "\t" << dyadic_text(values[k]) << "\t"
                << fixed(gml_dyadic_to_double(values[k]), 12) << "\n";
    }
  }
}

// ---- synth ----------------------------------------------------------------

struct SynthArgs {
  std::string dist;
  std::string target;
  std::string noise = "0";
  unsigned length = 0;
  std::uint64_t m = 0;
  std::uint64_t seed = 0;
  std::string out;
};

void run_synth(const SynthArgs& a) {
  gml_distribution* raw = nullptr;
  if (!a.dist.empty()) {
    check(gml_distribution_load(a.dist.c_str(), &raw));
  } else {
    if (a.target.empty() || a.length == 0) {
      std::cerr << "gml synth: give --dist, or --target with --length\n";
      throw StatusError{GML_ERR_INVALID_ARGUMENT};
    }
    const std::string json = "{\"schema\":1,\"bit_model\":\"uniform\",\"target\":\"" + a.target +
                             "\",\"noise\":\"" + a.noise + "\",\"length\":" +
                             std::to_string(a.length) + "}";
    check(gml_distribution_parse_json(json.c_str(), &raw));
  }
  const Distribution d(raw);
  gml_sample* s = nullptr;
  check(gml_distribution_sample(d.get(), a.m, a.seed, &s));
  const Sample sample(s);
  char* text = nullptr;
  check(gml_sample_to_jsonl(sample.get(), &text));
  write_output(a.out, take(text));
}

// ---- select ---------------------------------------------------------------

struct SelectArgs {
  std::string data;
  double delta = 0.1;
  std::string weights = "geometric";
  unsigned n_min = 0;
  unsigned n_max = 0;
  std::string rule = "gml";
  double split = 0.8;
  unsigned fixed_n = 1;
  int unoccupied = 0;
  std::string trace_csv;
  std::string out;
};

void run_select(const SelectArgs& a) {
  gml_sample* raw = nullptr;
  check(gml_sample_load_jsonl(a.data.c_str(), &raw));
  const Sample s(raw);
  const Weights w = load_weights(a.weights);

  gml_select_options options;
  gml_select_options_init(&options);
  options.delta = a.delta;
  options.weights = w.get();
  options.split_ratio = a.split;
  options.fixed_n = a.fixed_n;
  options.unoccupied_label = a.unoccupied;
  if (a.n_min != 0 || a.n_max != 0) {
    options.n_min = a.n_min == 0 ? 1 : a.n_min;
    options.n_max = a.n_max == 0 ? options.n_min : a.n_max;
  }
  if (a.rule == "gml") {
    options.rule = GML_RULE_GML;
  } else if (a.rule == "union-erm") {
    options.rule = GML_RULE_UNION_ERM;
  } else if (a.rule == "holdout") {
    options.rule = GML_RULE_HOLDOUT;
  } else {
    options.rule = GML_RULE_FIXED_N;
  }
  gml_selection* sel = nullptr;
  check(gml_select(s.get(), &options, &sel));
  const Selection selection(sel);
  char* json = nullptr;
  check(gml_selection_to_json(selection.get(), &json));
  write_output(a.out, take(json) + "\n");
  if (!a.trace_csv.empty()) {
    char* csv = nullptr;
    check(gml_selection_trace_csv(selection.get(), &csv));
    write_output(a.trace_csv, take(csv));
  }
}

// ---- oracle-check ---------------------------------------------------------

struct OracleArgs {
  unsigned n = 1;
  std::uint64_t samples = 100;
  std::uint64_t seed = 0;
  std::uint64_t max_m = 50;
};

int run_oracle(const OracleArgs& a) {
  std::uint64_t passed = 0, total = 0;
  check(gml_oracle_check(a.n, a.samples, a.seed, a.max_m, &passed, &total));
  std::cout << (passed == total ? "PASS " : "FAIL ") << passed << "/" << total << "\n";
  return passed == total ? kOk : kCheckFailed;
}

// ---- experiment -----------------------------------------------------------

struct ExperimentArgs {
  std::string config;
  std::string out;
  std::string format = "csv";
  bool paranoid = false;
  unsigned threads = 0;
};

void run_experiment(const ExperimentArgs& a) {
  check(gml_experiment_run(a.config.c_str(), a.out.c_str(),
                           a.format == "json" ? GML_FORMAT_JSON : GML_FORMAT_CSV,
                           a.paranoid ? 1 : 0, a.threads));
  std::cout << "wrote " << a.format << " reports to " << a.out << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Penalized model selection over bit-prefix hypothesis classes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(gml_version()));

  BoundsArgs bounds;
  auto* bounds_cmd = app.add_subcommand("bounds", "Penalties, ε_n and sample complexities per class index");
  bounds_cmd->add_option("--n", bounds.n, "Class index (repeatable)")->required()->check(CLI::PositiveNumber);
  bounds_cmd->add_option("--m", bounds.m, "Sample size")->required()->check(CLI::PositiveNumber);
  bounds_cmd->add_option("--delta", bounds.delta, "Confidence parameter δ in (0,1)")->capture_default_str();
  bounds_cmd->add_option("--epsilon", bounds.epsilon, "Accuracy ε in (0,1) for the sample complexities")->capture_default_str();
  bounds_cmd->add_option("--weights", bounds.weights, "harmonic | geometric | path to weights JSON")->capture_default_str();
  bounds_cmd->add_option("--format", bounds.format, "table | csv")->check(CLI::IsMember({"table", "csv"}))->capture_default_str();

  MeasureArgs measure;
  auto* measure_cmd = app.add_subcommand("measure", "Exact dyadic premeasure of hypotheses");
  measure_cmd->add_option("--hypothesis", measure.hypotheses, "Hypothesis as n:c1,c2,... (repeatable)");
  measure_cmd->add_flag("--check-additivity", measure.additivity, "Check finite additivity of the given disjoint hypotheses");
  measure_cmd->add_option("--shrinking", measure.shrinking, "Print P0 of the first K odd-position intersections");

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Draw a JSON Lines dataset from a synthetic distribution");
  auto* dist_opt = synth_cmd->add_option("--dist", synth.dist, "Distribution JSON file");
  auto* target_opt = synth_cmd->add_option("--target", synth.target, "Target hypothesis (uniform bits)");
  synth_cmd->add_option("--noise", synth.noise, "Label noise rate, e.g. 1/10")->capture_default_str();
  synth_cmd->add_option("--length", synth.length, "Instance length");
  synth_cmd->add_option("--m", synth.m, "Number of examples")->required()->check(CLI::PositiveNumber);
  synth_cmd->add_option("--seed", synth.seed, "Seed")->capture_default_str();
  synth_cmd->add_option("--out", synth.out, "Output path (default stdout)");
  dist_opt->excludes(target_opt);

  SelectArgs select;
  auto* select_cmd = app.add_subcommand("select", "Select a hypothesis from a JSON Lines dataset");
  select_cmd->add_option("--data", select.data, "Dataset (JSON Lines)")->required();
  select_cmd->add_option("--delta", select.delta, "Confidence parameter δ")->capture_default_str();
  select_cmd->add_option("--weights", select.weights, "harmonic | geometric | path to weights JSON")->capture_default_str();
  select_cmd->add_option("--n-min", select.n_min, "Smallest class index (default 1)");
  select_cmd->add_option("--n-max", select.n_max, "Largest class index (default min(floor(log2 m), depth cap))");
  select_cmd->add_option("--rule", select.rule, "gml | union-erm | holdout | fixed-n")
      ->check(CLI::IsMember({"gml", "union-erm", "holdout", "fixed-n"}))->capture_default_str();
  select_cmd->add_option("--split", select.split, "Holdout training fraction")->capture_default_str();
  select_cmd->add_option("--fixed-n", select.fixed_n, "Class index for --rule fixed-n")->capture_default_str();
  select_cmd->add_option("--unoccupied-label", select.unoccupied, "Label for cells with no data")
      ->check(CLI::Range(0, 1))->capture_default_str();
  select_cmd->add_option("--trace-csv", select.trace_csv, "Also write the per-n trace as CSV here");
  select_cmd->add_option("--out", select.out, "Output path for the JSON result (default stdout)");

  OracleArgs oracle;
  auto* oracle_cmd = app.add_subcommand("oracle-check", "Compare ERM and sup-deviation against brute force");
  oracle_cmd->add_option("--n", oracle.n, "Class index, 1..3")->required()->check(CLI::Range(1, 3));
  oracle_cmd->add_option("--samples", oracle.samples, "Number of random cases")->capture_default_str();
  oracle_cmd->add_option("--seed", oracle.seed, "Seed")->capture_default_str();
  oracle_cmd->add_option("--max-m", oracle.max_m, "Largest sample size")->capture_default_str();

  ExperimentArgs experiment;
  auto* experiment_cmd = app.add_subcommand("experiment", "Run the Monte Carlo bound and consistency experiments");
  experiment_cmd->add_option("--config", experiment.config, "Experiment config JSON")->required();
  experiment_cmd->add_option("--out", experiment.out, "Output directory")->required();
  experiment_cmd->add_option("--format", experiment.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  experiment_cmd->add_flag("--paranoid", experiment.paranoid, "Cross-check sup-deviation against brute force (n <= 3)");
  experiment_cmd->add_option("--threads", experiment.threads, "Worker threads (0 = all cores)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*bounds_cmd) run_bounds(bounds);
    if (*measure_cmd) run_measure(measure);
    if (*synth_cmd) run_synth(synth);
    if (*select_cmd) run_select(select);
    if (*oracle_cmd) return run_oracle(oracle);
    if (*experiment_cmd) run_experiment(experiment);
  } catch (const StatusError& e) {
    const char* message = gml_last_error();
    std::cerr << "gml: error: " << gml_status_string(e.status);
    if (message != nullptr && *message != '\0') std::cerr << ": " << message;
    std::cerr << "\n";
    return exit_code(e.status);
  }
  return kOk;
}
