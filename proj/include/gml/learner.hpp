#pragma once

#include <cstdint>
#include <vector>

#include "gml/bounds.hpp"
#include "gml/hypothesis.hpp"
#include "gml/rational.hpp"
#include "gml/synth.hpp"

namespace gml {

struct ErmOptions {
  /// Label given to cells that no training instance falls into.
  Label unoccupied = Label::Zero;
};

struct ErmResult {
  Hypothesis hypothesis;
  Rational risk;
};

/// Exact fraction of misclassified examples.
Rational empirical_risk(const Hypothesis& h, const LabeledSample& s);

/// ERM over all 2^(2^n) members of H_n via a majority vote inside each
/// occupied depth-n cell. Label ties inside a cell go to 0, so among
/// minimizers the result has the fewest 1-cells.
ErmResult erm_in_class(unsigned n, const LabeledSample& s, const ErmOptions& options = {});

inline constexpr unsigned kBruteforceMaxDepth = 3;

/// Exhaustive ERM over every subset of cells; n <= 3. Among equal risks the
/// hypothesis with fewer cells (then smaller cell mask) wins.
ErmResult erm_bruteforce(unsigned n, const LabeledSample& s);

struct IndexRange {
  unsigned n_min = 1;
  unsigned n_max = 1;
};

/// [1, min(floor(log2 m), depth cap)], never below [1, 1].
IndexRange default_index_range(std::uint64_t m);

struct TraceEntry {
  unsigned n = 0;
  Rational best_empirical_risk;
  double penalty = 0.0;
  double objective = 0.0;
};

struct SelectionResult {
  Hypothesis chosen = Hypothesis::empty(1);
  unsigned chosen_n = 0;
  Rational empirical_risk;
  double penalty = 0.0;
  double objective = 0.0;
  std::vector<TraceEntry> trace;
};

/// Penalized ERM: argmin over n in range and h in H_n of
/// L_S(h) + gml_penalty(n, m, δ, w). Objective ties go to the smaller n.
SelectionResult gml_select(const LabeledSample& s, double delta, const WeightScheme& w,
                           IndexRange range, const ErmOptions& options = {});

/// Argmin of empirical risk alone across the range (ties to smaller n).
SelectionResult unpenalized_union_erm(const LabeledSample& s, IndexRange range,
                                      const ErmOptions& options = {});

/// ERM per n on the first ⌈ratio·m⌉ examples, chosen by risk on the rest.
/// The reported penalty is the validation gap, so objective is the
/// validation risk.
SelectionResult holdout_select(const LabeledSample& s, double split_ratio, IndexRange range,
                               const ErmOptions& options = {});

/// ERM in a single class; penalty 0.
SelectionResult fixed_n_select(const LabeledSample& s, unsigned n, const ErmOptions& options = {});

/// sup over h in H_n of |L_D(h) - L_S(h)|, exact, in O(2^n + m).
Rational sup_deviation(unsigned n, const LabeledSample& s, const SyntheticDistribution& d);

}  // namespace gml
