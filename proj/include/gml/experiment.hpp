#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gml/bounds.hpp"
#include "gml/learner.hpp"
#include "gml/synth.hpp"

namespace gml {

enum class Rule { Gml, UnionErm, Holdout, FixedN };

std::string to_string(Rule rule);
Rule parse_rule(std::string_view name);

struct ExperimentConfig {
  SyntheticDistribution distribution = SyntheticDistribution::uniform(Hypothesis::empty(1), Rational(0), 1);
  std::vector<std::uint64_t> m_values;
  std::uint64_t trials = 1;
  double delta = 0.1;
  WeightScheme weights = WeightScheme::geometric();
  IndexRange n_range;
  std::vector<Rule> rules;
  std::uint64_t root_seed = 0;
  double holdout_ratio = 0.8;
  std::optional<unsigned> fixed_n;
  ErmOptions erm;
  bool run_violation = true;
  bool run_consistency = true;

  /// Throws ErrorCode::Config describing the first violated constraint.
  void validate() const;
};

ExperimentConfig parse_experiment_config(const nlohmann::json& j);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);
nlohmann::json experiment_config_to_json(const ExperimentConfig& c);

struct RunOptions {
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
  /// Cross-check every sup_deviation for n <= 3 against brute force.
  bool paranoid = false;
};

struct WilsonInterval {
  double lo = 0.0;
  double hi = 1.0;
};

/// 95% Wilson score interval for k successes in n trials.
WilsonInterval wilson_interval(std::uint64_t k, std::uint64_t n);

struct ViolationRow {
  /// Class index; std::nullopt marks the simultaneous (any n) row.
  std::optional<unsigned> n;
  std::uint64_t m = 0;
  std::uint64_t trials = 0;
  std::uint64_t violations = 0;
  double rate = 0.0;
  WilsonInterval ci;
};

struct ViolationReport {
  /// Per m: one row per n in ascending order, then the simultaneous row.
  std::vector<ViolationRow> rows;

  const ViolationRow& simultaneous(std::uint64_t m) const;
};

/// Per trial: draw S, compare sup_deviation(n, S, D) with ε_n(m, w(n)δ)
/// for every n in range.
ViolationReport run_violation(const ExperimentConfig& config, const RunOptions& options = {});

struct ConsistencyRow {
  Rule rule = Rule::Gml;
  std::uint64_t m = 0;
  std::uint64_t trials = 0;
  double mean_risk = 0.0;
  double median_risk = 0.0;
  double mean_excess = 0.0;
  double median_excess = 0.0;
  double mean_n = 0.0;
};

struct ConsistencyCurve {
  /// Rule-major, m ascending.
  std::vector<ConsistencyRow> rows;

  const ConsistencyRow& at(Rule rule, std::uint64_t m) const;
};

/// Each rule selects on the same fresh sample per (m, trial); the chosen
/// hypothesis is scored by its exact true risk.
ConsistencyCurve run_consistency(const ExperimentConfig& config, const RunOptions& options = {});

enum class ReportFormat { Csv, Json };

/// Header: n,m,trials,violations,rate,rate_ci_lo,rate_ci_hi ("all" in n for
/// the simultaneous rows).
std::string violation_csv(const ViolationReport& r);
nlohmann::json violation_json(const ViolationReport& r);
/// Header: rule,m,mean_risk,median_risk,excess,mean_n (excess is the median
/// excess risk over the noise floor).
std::string consistency_csv(const ConsistencyCurve& c);
nlohmann::json consistency_json(const ConsistencyCurve& c);

void emit_report(const ViolationReport& r, ReportFormat format, const std::filesystem::path& path);
void emit_report(const ConsistencyCurve& c, ReportFormat format, const std::filesystem::path& path);

/// Runs whatever the config enables and writes violation.{csv,json} and/or
/// consistency.{csv,json} into out_dir (created if missing).
void run_experiment_to_dir(const ExperimentConfig& config, const RunOptions& options,
                           ReportFormat format, const std::filesystem::path& out_dir);

}  // namespace gml
