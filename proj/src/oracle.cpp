#include "gml/oracle.hpp"

#include <random>

#include "gml/error.hpp"
#include "gml/learner.hpp"

namespace gml {

Rational sup_deviation_bruteforce(unsigned n, const LabeledSample& s,
                                  const SyntheticDistribution& d) {
  if (n < 1 || n > kBruteforceMaxDepth) {
    fail(ErrorCode::DepthCap, "brute-force supremum supports 1 <= n <= 3");
  }
  const unsigned cells = 1U << n;
  Rational best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cells); ++mask) {
    std::vector<Cell> members;
    for (Cell c = 0; c < cells; ++c) {
      if ((mask >> c) & 1U) members.push_back(c);
    }
    const Hypothesis h = Hypothesis::from_cells(n, std::move(members));
    Rational gap = true_risk(h, d) - empirical_risk(h, s);
    if (gap < 0) gap = -gap;
    if (gap > best) best = gap;
  }
  return best;
}

namespace {

// Small random world: target depth up to n + 1, instance length n + 2.
SyntheticDistribution random_distribution(unsigned n, std::mt19937_64& rng) {
  const unsigned target_depth = 1 + static_cast<unsigned>(rng() % (n + 1));
  std::vector<Cell> cells;
  for (Cell c = 0; c < (Cell{1} << target_depth); ++c) {
    if (rng() & 1U) cells.push_back(c);
  }
  Hypothesis target = Hypothesis::from_cells(target_depth, std::move(cells));
  static const char* const kNoise[] = {"0", "1/10", "1/5", "1/4", "1/3", "3/7"};
  Rational noise = parse_rational(kNoise[rng() % std::size(kNoise)]);
  const unsigned length = n + 2;
  if (rng() % 3 == 0) {
    std::vector<Rational> p;
    for (unsigned i = 0; i < length; ++i) p.emplace_back(1 + rng() % 7, 8);
    return SyntheticDistribution::bernoulli(std::move(p), std::move(target), std::move(noise));
  }
  return SyntheticDistribution::uniform(std::move(target), std::move(noise), length);
}

}  // namespace

OracleCheckReport oracle_check(unsigned n, std::uint64_t samples, std::uint64_t seed,
                               std::uint64_t max_m) {
  if (n < 1 || n > kBruteforceMaxDepth) {
    fail(ErrorCode::DepthCap, "oracle-check supports 1 <= n <= 3, got " + std::to_string(n));
  }
  if (max_m < 1) fail(ErrorCode::InvalidArgument, "max sample size must be >= 1");
  OracleCheckReport report;
  for (std::uint64_t i = 0; i < samples; ++i) {
    std::mt19937_64 rng(derive_seed(seed, n, i));
    const SyntheticDistribution d = random_distribution(n, rng);
    const std::uint64_t m = 1 + rng() % max_m;
    const LabeledSample s = sample(d, m, rng());

    const bool erm_ok = erm_in_class(n, s).risk == erm_bruteforce(n, s).risk;
    const bool sup_ok = sup_deviation(n, s, d) == sup_deviation_bruteforce(n, s, d);
    ++report.total;
    report.erm_agree += erm_ok ? 1 : 0;
    report.sup_agree += sup_ok ? 1 : 0;
    report.passed += (erm_ok && sup_ok) ? 1 : 0;
  }
  return report;
}

}  // namespace gml
