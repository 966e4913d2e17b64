#include "gml/learner.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <utility>

#include "gml/config.hpp"
#include "gml/error.hpp"

namespace gml {

namespace {

struct CellCounts {
  Cell cell;
  std::uint64_t ones = 0;
  std::uint64_t zeros = 0;
};

// Occupied cells in ascending order with their label counts.
std::vector<CellCounts> count_cells(unsigned n, const LabeledSample& s) {
  std::vector<std::pair<Cell, Label>> keyed;
  keyed.reserve(s.size());
  for (const auto& e : s.examples()) keyed.emplace_back(e.x.prefix(n), e.y);
  std::sort(keyed.begin(), keyed.end());
  std::vector<CellCounts> out;
  for (const auto& [cell, y] : keyed) {
    if (out.empty() || out.back().cell != cell) out.push_back({cell});
    (y == Label::One ? out.back().ones : out.back().zeros) += 1;
  }
  return out;
}

void require_class(unsigned n, const LabeledSample& s, const char* what) {
  if (n < 1) fail(ErrorCode::InvalidArgument, std::string(what) + ": n must be >= 1");
  require_within_cap(n, what);
  s.require_length(n);
}

void require_range(IndexRange range, const LabeledSample& s) {
  if (range.n_min < 1 || range.n_min > range.n_max) {
    fail(ErrorCode::InvalidArgument, "empty class index range [" + std::to_string(range.n_min) +
                                         ", " + std::to_string(range.n_max) + "]");
  }
  require_within_cap(range.n_max, "class index range");
  s.require_length(range.n_max);
}

SelectionResult make_result(std::vector<TraceEntry> trace, std::vector<ErmResult> fits,
                            std::size_t best) {
  SelectionResult r;
  r.chosen = std::move(fits[best].hypothesis);
  r.chosen_n = trace[best].n;
  r.empirical_risk = trace[best].best_empirical_risk;
  r.penalty = trace[best].penalty;
  r.objective = trace[best].objective;
  r.trace = std::move(trace);
  return r;
}

}  // namespace

Rational empirical_risk(const Hypothesis& h, const LabeledSample& s) {
  std::uint64_t errors = 0;
  for (const auto& e : s.examples()) {
    if (evaluate(h, e.x) != e.y) ++errors;
  }
  return Rational(errors, s.size());
}

ErmResult erm_in_class(unsigned n, const LabeledSample& s, const ErmOptions& options) {
  require_class(n, s, "erm_in_class");
  const std::vector<CellCounts> counts = count_cells(n, s);
  std::vector<Cell> cells;
  std::uint64_t errors = 0;
  for (const auto& c : counts) {
    if (c.ones > c.zeros) cells.push_back(c.cell);
    errors += std::min(c.ones, c.zeros);
  }
  if (options.unoccupied == Label::One) {
    auto occ = counts.begin();
    const Cell total = Cell{1} << n;
    for (Cell c = 0; c < total; ++c) {
      if (occ != counts.end() && occ->cell == c) {
        ++occ;
      } else {
        cells.push_back(c);
      }
    }
  }
  return {Hypothesis::from_cells(n, std::move(cells)), Rational(errors, s.size())};
}

ErmResult erm_bruteforce(unsigned n, const LabeledSample& s) {
  if (n < 1 || n > kBruteforceMaxDepth) {
    fail(ErrorCode::DepthCap, "erm_bruteforce supports 1 <= n <= 3, got " + std::to_string(n));
  }
  s.require_length(n);
  const unsigned cell_count = 1U << n;
  std::uint64_t best_mask = 0;
  std::uint64_t best_errors = s.size() + 1;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cell_count); ++mask) {
    std::uint64_t errors = 0;
    for (const auto& e : s.examples()) {
      const bool predicted = (mask >> e.x.prefix(n)) & 1U;
      if (predicted != (e.y == Label::One)) ++errors;
    }
    const bool better = errors < best_errors ||
                        (errors == best_errors && std::popcount(mask) < std::popcount(best_mask));
    if (better) {
      best_errors = errors;
      best_mask = mask;
    }
  }
  std::vector<Cell> cells;
  for (Cell c = 0; c < cell_count; ++c) {
    if ((best_mask >> c) & 1U) cells.push_back(c);
  }
  return {Hypothesis::from_cells(n, std::move(cells)), Rational(best_errors, s.size())};
}

IndexRange default_index_range(std::uint64_t m) {
  const unsigned log_m = m < 2 ? 1 : static_cast<unsigned>(std::bit_width(m) - 1);
  return {1, std::max(1U, std::min(log_m, depth_cap()))};
}

SelectionResult gml_select(const LabeledSample& s, double delta, const WeightScheme& w,
                           IndexRange range, const ErmOptions& options) {
  require_range(range, s);
  std::vector<TraceEntry> trace;
  std::vector<ErmResult> fits;
  for (unsigned n = range.n_min; n <= range.n_max; ++n) {
    ErmResult fit = erm_in_class(n, s, options);
    const double penalty = gml_penalty(n, s.size(), delta, w);
    trace.push_back({n, fit.risk, penalty, to_double(fit.risk) + penalty});
    fits.push_back(std::move(fit));
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < trace.size(); ++i) {
    if (trace[i].objective < trace[best].objective) best = i;
  }
  return make_result(std::move(trace), std::move(fits), best);
}

SelectionResult unpenalized_union_erm(const LabeledSample& s, IndexRange range,
                                      const ErmOptions& options) {
  require_range(range, s);
  std::vector<TraceEntry> trace;
  std::vector<ErmResult> fits;
  for (unsigned n = range.n_min; n <= range.n_max; ++n) {
    ErmResult fit = erm_in_class(n, s, options);
    trace.push_back({n, fit.risk, 0.0, to_double(fit.risk)});
    fits.push_back(std::move(fit));
  }
  // Compare exact risks so that equal fractions always tie.
  std::size_t best = 0;
  for (std::size_t i = 1; i < trace.size(); ++i) {
    if (trace[i].best_empirical_risk < trace[best].best_empirical_risk) best = i;
  }
  return make_result(std::move(trace), std::move(fits), best);
}

SelectionResult holdout_select(const LabeledSample& s, double split_ratio, IndexRange range,
                               const ErmOptions& options) {
  if (!(split_ratio > 0.0 && split_ratio < 1.0)) {
    fail(ErrorCode::Domain, "split ratio must lie in (0,1)");
  }
  require_range(range, s);
  const auto m = static_cast<double>(s.size());
  const auto train_size = static_cast<std::size_t>(std::ceil(split_ratio * m - 1e-9));
  if (train_size == 0 || train_size >= s.size()) {
    fail(ErrorCode::Domain, "degenerate split: " + std::to_string(train_size) + " train / " +
                                std::to_string(s.size() - std::min(train_size, s.size())) +
                                " validation");
  }
  const auto all = s.examples();
  const LabeledSample train({all.begin(), all.begin() + static_cast<std::ptrdiff_t>(train_size)});
  const LabeledSample validation({all.begin() + static_cast<std::ptrdiff_t>(train_size), all.end()});

  std::vector<TraceEntry> trace;
  std::vector<ErmResult> fits;
  std::vector<Rational> validation_risks;
  for (unsigned n = range.n_min; n <= range.n_max; ++n) {
    ErmResult fit = erm_in_class(n, train, options);
    Rational v = empirical_risk(fit.hypothesis, validation);
    const double objective = to_double(v);
    trace.push_back({n, fit.risk, objective - to_double(fit.risk), objective});
    validation_risks.push_back(std::move(v));
    fits.push_back(std::move(fit));
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < trace.size(); ++i) {
    if (validation_risks[i] < validation_risks[best]) best = i;
  }
  return make_result(std::move(trace), std::move(fits), best);
}

SelectionResult fixed_n_select(const LabeledSample& s, unsigned n, const ErmOptions& options) {
  ErmResult fit = erm_in_class(n, s, options);
  SelectionResult r;
  r.chosen = std::move(fit.hypothesis);
  r.chosen_n = n;
  r.empirical_risk = fit.risk;
  r.objective = to_double(fit.risk);
  r.trace.push_back({n, fit.risk, 0.0, r.objective});
  return r;
}

Rational sup_deviation(unsigned n, const LabeledSample& s, const SyntheticDistribution& d) {
  require_class(n, s, "sup_deviation");
  const std::vector<CellErrorMass> masses = cell_error_masses(n, d);

  // Per cell: deviation L_D - L_S contributed by labeling it 1 or 0.
  std::vector<std::uint64_t> zeros(masses.size(), 0);
  std::vector<std::uint64_t> ones(masses.size(), 0);
  for (const auto& e : s.examples()) {
    const Cell c = e.x.prefix(n);
    (e.y == Label::One ? ones[c] : zeros[c]) += 1;
  }
  const Rational inv_m(1, s.size());
  Rational upper = 0;
  Rational lower = 0;
  for (std::size_t c = 0; c < masses.size(); ++c) {
    const Rational dev_one = masses[c].predict_one - zeros[c] * inv_m;
    const Rational dev_zero = masses[c].predict_zero - ones[c] * inv_m;
    if (dev_one < dev_zero) {
      upper += dev_zero;
      lower += dev_one;
    } else {
      upper += dev_one;
      lower += dev_zero;
    }
  }
  const Rational neg_lower = -lower;
  return upper > neg_lower ? upper : neg_lower;
}

}  // namespace gml
