#pragma once

#include <cstdint>

#include "gml/hypothesis.hpp"
#include "gml/rational.hpp"
#include "gml/synth.hpp"

namespace gml {

/// max over all 2^(2^n) hypotheses of |true_risk - empirical_risk|, each
/// evaluated instance by instance; n <= 3. Shares no code path with
/// sup_deviation beyond the hypothesis primitives.
Rational sup_deviation_bruteforce(unsigned n, const LabeledSample& s,
                                  const SyntheticDistribution& d);

struct OracleCheckReport {
  std::uint64_t total = 0;
  std::uint64_t erm_agree = 0;
  std::uint64_t sup_agree = 0;
  std::uint64_t passed = 0;  // both agree
};

/// Random (distribution, sample) pairs with m <= max_m, seeded per case from
/// `seed`; compares erm_in_class with erm_bruteforce and sup_deviation with
/// its brute-force counterpart.
OracleCheckReport oracle_check(unsigned n, std::uint64_t samples, std::uint64_t seed,
                               std::uint64_t max_m = 50);

}  // namespace gml
