#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gml/hypothesis.hpp"
#include "gml/rational.hpp"

namespace gml {

/// Instances of fixed length with independent bits (uniform or per-position
/// Bernoulli), labels from a planted target h* flipped with probability η.
/// Every risk under this model is exactly computable.
class SyntheticDistribution {
 public:
  static SyntheticDistribution uniform(Hypothesis target, Rational noise, unsigned length);
  /// bit_probabilities[i] = P(bit i = 1); the instance length is their count.
  static SyntheticDistribution bernoulli(std::vector<Rational> bit_probabilities,
                                         Hypothesis target, Rational noise);

  bool is_uniform() const noexcept { return bit_probabilities_.empty(); }
  std::span<const Rational> bit_probabilities() const noexcept { return bit_probabilities_; }
  const Hypothesis& target() const noexcept { return target_; }
  const Rational& noise() const noexcept { return noise_; }
  unsigned length() const noexcept { return length_; }

  /// P(bit i = 1), i 0-based.
  Rational bit_probability(unsigned i) const;

 private:
  SyntheticDistribution(std::vector<Rational> p, Hypothesis target, Rational noise,
                        unsigned length);

  std::vector<Rational> bit_probabilities_;
  Hypothesis target_;
  Rational noise_;
  unsigned length_;
};

/// splitmix64 mix of (root, a, b); used to give each trial and draw its own
/// stream so runs are reproducible regardless of scheduling.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t a, std::uint64_t b = 0);

/// m i.i.d. draws, fully determined by seed. Uses only the raw mt19937_64
/// stream (no std distributions), so output is identical across platforms.
LabeledSample sample(const SyntheticDistribution& d, std::uint64_t m, std::uint64_t seed);

/// Exact probability mass P_D(h) of the instances labeled 1 by h.
Rational cylinder_mass(const Hypothesis& h, const SyntheticDistribution& d);

/// L_D(h) = η + (1 - 2η) P_D(h Δ h*).
Rational true_risk(const Hypothesis& h, const SyntheticDistribution& d);

struct CellErrorMass {
  /// P(x in cell, y = 0): error mass when the cell is labeled 1.
  Rational predict_one;
  /// P(x in cell, y = 1): error mass when the cell is labeled 0.
  Rational predict_zero;
};

/// Dense table indexed by the depth-n cell.
std::vector<CellErrorMass> cell_error_masses(unsigned n, const SyntheticDistribution& d);

}  // namespace gml
