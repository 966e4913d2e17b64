#include "gml/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "gml/config.hpp"
#include "gml/error.hpp"
#include "gml/io.hpp"
#include "gml/oracle.hpp"

namespace gml {

using nlohmann::json;

namespace {

constexpr double kWilsonZ = 1.959963984540054;

// Runs body(i) for i in [0, count) on up to `threads` workers. The first
// exception thrown by any worker is rethrown on the caller.
template <typename Body>
void parallel_for(std::uint64_t count, unsigned threads, Body body) {
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, count));
  if (threads <= 1) {
    for (std::uint64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (;;) {
          const std::uint64_t i = next.fetch_add(1);
          if (i >= count) return;
          try {
            body(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            next.store(count);
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

std::uint64_t trial_seed(const ExperimentConfig& c, std::uint64_t m, std::uint64_t trial) {
  return derive_seed(c.root_seed, m, trial);
}

SelectionResult select_with(Rule rule, const ExperimentConfig& c, const LabeledSample& s) {
  switch (rule) {
    case Rule::Gml: return gml_select(s, c.delta, c.weights, c.n_range, c.erm);
    case Rule::UnionErm: return unpenalized_union_erm(s, c.n_range, c.erm);
    case Rule::Holdout: return holdout_select(s, c.holdout_ratio, c.n_range, c.erm);
    case Rule::FixedN: return fixed_n_select(s, *c.fixed_n, c.erm);
  }
  fail(ErrorCode::Internal, "unknown rule");
}

double median(std::vector<Rational> values) {
  std::sort(values.begin(), values.end());
  const std::size_t k = values.size() / 2;
  if (values.size() % 2 == 1) return to_double(values[k]);
  return to_double((values[k - 1] + values[k]) / 2);
}

template <typename T>
T required(const json& j, const char* key) {
  if (!j.contains(key)) fail(ErrorCode::Config, std::string("experiment config: missing '") + key + "'");
  try {
    return j[key].get<T>();
  } catch (const json::exception& e) {
    fail(ErrorCode::Config, std::string("experiment config: bad '") + key + "': " + e.what());
  }
}

}  // namespace

std::string to_string(Rule rule) {
  switch (rule) {
    case Rule::Gml: return "gml";
    case Rule::UnionErm: return "union-erm";
    case Rule::Holdout: return "holdout";
    case Rule::FixedN: return "fixed-n";
  }
  return "gml";
}

Rule parse_rule(std::string_view name) {
  if (name == "gml") return Rule::Gml;
  if (name == "union-erm") return Rule::UnionErm;
  if (name == "holdout") return Rule::Holdout;
  if (name == "fixed-n") return Rule::FixedN;
  fail(ErrorCode::Config, "unknown rule '" + std::string(name) + "'");
}

void ExperimentConfig::validate() const {
  auto bad = [](const std::string& what) { fail(ErrorCode::Config, "experiment config: " + what); };
  if (trials < 1) bad("trials must be >= 1");
  if (m_values.empty()) bad("m_values must be non-empty");
  for (std::size_t i = 0; i < m_values.size(); ++i) {
    if (m_values[i] < 1) bad("m_values entries must be >= 1");
    if (i > 0 && m_values[i] <= m_values[i - 1]) bad("m_values must be strictly ascending");
  }
  if (!(delta > 0.0 && delta < 1.0)) bad("delta must lie in (0,1)");
  if (n_range.n_min < 1 || n_range.n_min > n_range.n_max) bad("n_range is empty");
  if (n_range.n_max > depth_cap()) {
    bad("n_range upper end " + std::to_string(n_range.n_max) + " exceeds depth cap " +
        std::to_string(depth_cap()));
  }
  if (n_range.n_max > distribution.length()) bad("n_range exceeds the instance length");
  if (!run_violation && !run_consistency) bad("nothing to run");
  if (run_consistency && rules.empty()) bad("consistency runs need at least one rule");
  for (Rule r : rules) {
    if (r == Rule::FixedN) {
      if (!fixed_n) bad("rule fixed-n requires 'fixed_n'");
      if (*fixed_n < 1 || *fixed_n > distribution.length() || *fixed_n > depth_cap()) {
        bad("fixed_n out of range");
      }
    }
    if (r == Rule::Holdout && !(holdout_ratio > 0.0 && holdout_ratio < 1.0)) {
      bad("holdout_ratio must lie in (0,1)");
    }
  }
  if (run_violation) {
    for (unsigned n = n_range.n_min; n <= n_range.n_max; ++n) {
      if (weights.neg_log_weight(n) == std::numeric_limits<double>::infinity()) {
        bad("weight w(" + std::to_string(n) + ") is zero");
      }
    }
  }
}

ExperimentConfig parse_experiment_config(const json& j) {
  if (!j.is_object()) fail(ErrorCode::Config, "experiment config: expected a JSON object");
  if (j.contains("schema") && j["schema"] != kSchemaVersion) {
    fail(ErrorCode::Config, "experiment config: unsupported schema " + j["schema"].dump());
  }
  static const char* const kKnown[] = {"schema",   "distribution", "m_values",      "trials",
                                       "delta",    "weights",      "n_range",       "rules",
                                       "root_seed", "holdout_ratio", "fixed_n",     "unoccupied_label",
                                       "run"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(std::begin(kKnown), std::end(kKnown), key) == std::end(kKnown)) {
      fail(ErrorCode::Config, "experiment config: unknown field '" + key + "'");
    }
  }
  ExperimentConfig c;
  if (!j.contains("distribution")) fail(ErrorCode::Config, "experiment config: missing 'distribution'");
  c.distribution = parse_distribution(j["distribution"]);
  c.m_values = required<std::vector<std::uint64_t>>(j, "m_values");
  c.trials = required<std::uint64_t>(j, "trials");
  c.delta = required<double>(j, "delta");
  c.root_seed = required<std::uint64_t>(j, "root_seed");
  if (j.contains("weights")) c.weights = parse_weights(j["weights"]);
  if (j.contains("n_range")) {
    const auto r = required<std::vector<unsigned>>(j, "n_range");
    if (r.size() != 2) fail(ErrorCode::Config, "experiment config: n_range must be [n_min, n_max]");
    c.n_range = {r[0], r[1]};
  } else if (!c.m_values.empty()) {
    c.n_range = default_index_range(c.m_values.front());
    c.n_range.n_max = std::min(c.n_range.n_max, c.distribution.length());
  }
  if (j.contains("rules")) {
    for (const auto& name : required<std::vector<std::string>>(j, "rules")) {
      c.rules.push_back(parse_rule(name));
    }
  }
  if (j.contains("holdout_ratio")) c.holdout_ratio = required<double>(j, "holdout_ratio");
  if (j.contains("fixed_n")) c.fixed_n = required<unsigned>(j, "fixed_n");
  if (j.contains("unoccupied_label")) {
    const auto v = required<int>(j, "unoccupied_label");
    if (v != 0 && v != 1) fail(ErrorCode::Config, "experiment config: unoccupied_label must be 0 or 1");
    c.erm.unoccupied = v == 1 ? Label::One : Label::Zero;
  }
  if (j.contains("run")) {
    c.run_violation = false;
    c.run_consistency = false;
    for (const auto& name : required<std::vector<std::string>>(j, "run")) {
      if (name == "violation") {
        c.run_violation = true;
      } else if (name == "consistency") {
        c.run_consistency = true;
      } else {
        fail(ErrorCode::Config, "experiment config: unknown experiment '" + name + "'");
      }
    }
  } else {
    c.run_consistency = !c.rules.empty();
  }
  c.validate();
  return c;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  return parse_experiment_config(read_json_file(path));
}

json experiment_config_to_json(const ExperimentConfig& c) {
  json j;
  j["schema"] = kSchemaVersion;
  j["distribution"] = distribution_to_json(c.distribution);
  j["m_values"] = c.m_values;
  j["trials"] = c.trials;
  j["delta"] = c.delta;
  j["weights"] = weights_to_json(c.weights);
  j["n_range"] = {c.n_range.n_min, c.n_range.n_max};
  json rules = json::array();
  for (Rule r : c.rules) rules.push_back(to_string(r));
  j["rules"] = rules;
  j["root_seed"] = c.root_seed;
  j["holdout_ratio"] = c.holdout_ratio;
  if (c.fixed_n) j["fixed_n"] = *c.fixed_n;
  j["unoccupied_label"] = to_int(c.erm.unoccupied);
  json run = json::array();
  if (c.run_violation) run.push_back("violation");
  if (c.run_consistency) run.push_back("consistency");
  j["run"] = run;
  return j;
}

WilsonInterval wilson_interval(std::uint64_t k, std::uint64_t n) {
  if (n == 0) return {0.0, 1.0};
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(k) / nn;
  const double z2 = kWilsonZ * kWilsonZ;
  const double denom = 1.0 + z2 / nn;
  const double centre = (p + z2 / (2.0 * nn)) / denom;
  const double half = kWilsonZ * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  return {k == 0 ? 0.0 : std::max(0.0, centre - half), k == n ? 1.0 : std::min(1.0, centre + half)};
}

const ViolationRow& ViolationReport::simultaneous(std::uint64_t m) const {
  for (const auto& r : rows) {
    if (!r.n && r.m == m) return r;
  }
  fail(ErrorCode::InvalidArgument, "no simultaneous row for m = " + std::to_string(m));
}

ViolationReport run_violation(const ExperimentConfig& config, const RunOptions& options) {
  config.validate();
  const unsigned n_min = config.n_range.n_min;
  const unsigned classes = config.n_range.n_max - n_min + 1;
  ViolationReport report;
  for (std::uint64_t m : config.m_values) {
    std::vector<double> radius(classes);
    for (unsigned k = 0; k < classes; ++k) {
      radius[k] = gml_penalty(n_min + k, m, config.delta, config.weights);
    }
    // violated[trial * classes + k]; written by exactly one worker each.
    std::vector<std::uint8_t> violated(config.trials * classes, 0);
    parallel_for(config.trials, options.threads, [&](std::uint64_t trial) {
      const LabeledSample s = sample(config.distribution, m, trial_seed(config, m, trial));
      for (unsigned k = 0; k < classes; ++k) {
        const unsigned n = n_min + k;
        const Rational dev = sup_deviation(n, s, config.distribution);
        if (options.paranoid && n <= kBruteforceMaxDepth &&
            dev != sup_deviation_bruteforce(n, s, config.distribution)) {
          fail(ErrorCode::Internal, "paranoid check: sup_deviation disagrees with brute force at n = " +
                                        std::to_string(n) + ", m = " + std::to_string(m) +
                                        ", trial " + std::to_string(trial));
        }
        violated[trial * classes + k] = to_double(dev) > radius[k] ? 1 : 0;
      }
    });
    std::uint64_t any = 0;
    std::vector<std::uint64_t> counts(classes, 0);
    for (std::uint64_t t = 0; t < config.trials; ++t) {
      bool hit = false;
      for (unsigned k = 0; k < classes; ++k) {
        counts[k] += violated[t * classes + k];
        hit = hit || violated[t * classes + k] != 0;
      }
      any += hit ? 1 : 0;
    }
    auto row = [&](std::optional<unsigned> n, std::uint64_t v) {
      ViolationRow r;
      r.n = n;
      r.m = m;
      r.trials = config.trials;
      r.violations = v;
      r.rate = static_cast<double>(v) / static_cast<double>(config.trials);
      r.ci = wilson_interval(v, config.trials);
      return r;
    };
    for (unsigned k = 0; k < classes; ++k) report.rows.push_back(row(n_min + k, counts[k]));
    report.rows.push_back(row(std::nullopt, any));
  }
  return report;
}

const ConsistencyRow& ConsistencyCurve::at(Rule rule, std::uint64_t m) const {
  for (const auto& r : rows) {
    if (r.rule == rule && r.m == m) return r;
  }
  fail(ErrorCode::InvalidArgument, "no consistency row for rule " + to_string(rule) +
                                       ", m = " + std::to_string(m));
}

ConsistencyCurve run_consistency(const ExperimentConfig& config, const RunOptions& options) {
  config.validate();
  if (config.rules.empty()) fail(ErrorCode::Config, "experiment config: no rules to compare");
  const std::size_t rules = config.rules.size();
  const Rational& eta = config.distribution.noise();

  struct Outcome {
    Rational risk;
    unsigned chosen_n = 0;
  };
  // outcomes[rule][m index][trial]
  std::vector<std::vector<std::vector<Outcome>>> outcomes(
      rules, std::vector<std::vector<Outcome>>(config.m_values.size(),
                                               std::vector<Outcome>(config.trials)));
  for (std::size_t mi = 0; mi < config.m_values.size(); ++mi) {
    const std::uint64_t m = config.m_values[mi];
    parallel_for(config.trials, options.threads, [&](std::uint64_t trial) {
      const LabeledSample s = sample(config.distribution, m, trial_seed(config, m, trial));
      for (std::size_t ri = 0; ri < rules; ++ri) {
        const SelectionResult r = select_with(config.rules[ri], config, s);
        outcomes[ri][mi][trial] = {true_risk(r.chosen, config.distribution), r.chosen_n};
      }
    });
  }

  ConsistencyCurve curve;
  for (std::size_t ri = 0; ri < rules; ++ri) {
    for (std::size_t mi = 0; mi < config.m_values.size(); ++mi) {
      const auto& trials = outcomes[ri][mi];
      std::vector<Rational> risks;
      std::vector<Rational> excess;
      Rational risk_sum = 0;
      std::uint64_t n_sum = 0;
      for (const auto& o : trials) {
        risks.push_back(o.risk);
        excess.push_back(o.risk - eta);
        risk_sum += o.risk;
        n_sum += o.chosen_n;
      }
      const auto count = static_cast<std::uint64_t>(trials.size());
      ConsistencyRow row;
      row.rule = config.rules[ri];
      row.m = config.m_values[mi];
      row.trials = count;
      row.mean_risk = to_double(risk_sum / count);
      row.median_risk = median(risks);
      row.mean_excess = to_double(risk_sum / count - eta);
      row.median_excess = median(excess);
      row.mean_n = static_cast<double>(n_sum) / static_cast<double>(count);
      curve.rows.push_back(row);
    }
  }
  return curve;
}

std::string violation_csv(const ViolationReport& r) {
  std::string out = "n,m,trials,violations,rate,rate_ci_lo,rate_ci_hi\n";
  for (const auto& row : r.rows) {
    out += (row.n ? std::to_string(*row.n) : std::string("all")) + "," + std::to_string(row.m) +
           "," + std::to_string(row.trials) + "," + std::to_string(row.violations) + "," +
           format_fixed(row.rate) + "," + format_fixed(row.ci.lo) + "," + format_fixed(row.ci.hi) +
           "\n";
  }
  return out;
}

json violation_json(const ViolationReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"n", row.n ? json(*row.n) : json("all")},
                    {"m", row.m},
                    {"trials", row.trials},
                    {"violations", row.violations},
                    {"rate", row.rate},
                    {"rate_ci_lo", row.ci.lo},
                    {"rate_ci_hi", row.ci.hi}});
  }
  return {{"schema", kSchemaVersion}, {"kind", "violation"}, {"rows", rows}};
}

std::string consistency_csv(const ConsistencyCurve& c) {
  std::string out = "rule,m,mean_risk,median_risk,excess,mean_n\n";
  for (const auto& row : c.rows) {
    out += to_string(row.rule) + "," + std::to_string(row.m) + "," + format_fixed(row.mean_risk) +
           "," + format_fixed(row.median_risk) + "," + format_fixed(row.median_excess) + "," +
           format_fixed(row.mean_n) + "\n";
  }
  return out;
}

json consistency_json(const ConsistencyCurve& c) {
  json rows = json::array();
  for (const auto& row : c.rows) {
    rows.push_back({{"rule", to_string(row.rule)},
                    {"m", row.m},
                    {"trials", row.trials},
                    {"mean_risk", row.mean_risk},
                    {"median_risk", row.median_risk},
                    {"mean_excess", row.mean_excess},
                    {"median_excess", row.median_excess},
                    {"mean_n", row.mean_n}});
  }
  return {{"schema", kSchemaVersion}, {"kind", "consistency"}, {"rows", rows}};
}

void emit_report(const ViolationReport& r, ReportFormat format, const std::filesystem::path& path) {
  write_text_file(path, format == ReportFormat::Csv ? violation_csv(r) : violation_json(r).dump(2) + "\n");
}

void emit_report(const ConsistencyCurve& c, ReportFormat format, const std::filesystem::path& path) {
  write_text_file(path, format == ReportFormat::Csv ? consistency_csv(c) : consistency_json(c).dump(2) + "\n");
}

void run_experiment_to_dir(const ExperimentConfig& config, const RunOptions& options,
                           ReportFormat format, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) fail(ErrorCode::Io, "cannot create output directory '" + out_dir.string() + "': " + ec.message());
  const char* ext = format == ReportFormat::Csv ? ".csv" : ".json";
  if (config.run_violation) {
    emit_report(run_violation(config, options), format, out_dir / (std::string("violation") + ext));
  }
  if (config.run_consistency) {
    emit_report(run_consistency(config, options), format, out_dir / (std::string("consistency") + ext));
  }
}

}  // namespace gml
