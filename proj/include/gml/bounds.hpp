#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace gml {

/// Every logarithm in the bound stack is natural (Hoeffding-derived bounds).
/// This includes the union-of-classes VC bound, whose base is otherwise
/// unstated.
inline constexpr const char* kLogBase = "e";

/// Prior-like weights w: N -> [0,1] over class indices with Σ w(n) <= 1.
class WeightScheme {
 public:
  enum class Kind { Harmonic, Geometric, Custom };
  /// How a custom table continues past its last entry w(K):
  /// Zero gives w(n) = 0, Geometric gives w(K + j) = w(K) * 2^-j.
  enum class Tail { Zero, Geometric };

  /// w(n) = 6 / (π² n²)
  static WeightScheme harmonic();
  /// w(n) = 2^-n
  static WeightScheme geometric();
  /// Rejects entries outside [0,1] and tables whose total mass, tail
  /// included, exceeds 1.
  static WeightScheme custom(std::vector<double> table, Tail tail);

  Kind kind() const noexcept { return kind_; }
  Tail tail() const noexcept { return tail_; }
  std::span<const double> table() const noexcept { return table_; }
  std::string name() const;

  double weight(unsigned n) const;
  /// -ln w(n), evaluated without forming w(n) where possible; +inf when w(n) = 0.
  double neg_log_weight(unsigned n) const;
  /// Σ_{k<=n_max} w(k), compensated summation.
  double partial_sum(unsigned n_max) const;

 private:
  WeightScheme(Kind kind, std::vector<double> table, Tail tail)
      : kind_(kind), table_(std::move(table)), tail_(tail) {}

  Kind kind_;
  std::vector<double> table_;
  Tail tail_ = Tail::Zero;
};

/// |H_n| = 2^(2^n) exactly. Overflow error once 2^n > 62.
std::uint64_t class_size(unsigned n);
/// ln |H_n| = 2^n ln 2.
double log_class_size(unsigned n);

/// ⌈ln(2|H|/δ) / (2ε²)⌉, the uniform-convergence sample complexity of a
/// finite class. The result is the smallest m whose Hoeffding radius
/// √(ln(2|H|/δ)/(2m)) is <= ε.
std::uint64_t uc_sample_complexity(double log_class_size, double epsilon, double delta);
/// ⌈2 ln(2|H|/δ) / ε²⌉, agnostic ERM form (equals the UC form at ε/2).
std::uint64_t agnostic_sample_complexity(double log_class_size, double epsilon, double delta);

struct EpsilonValue {
  double value = 0.0;
  /// value >= 1: the bound is vacuous.
  bool saturated = false;
};

/// ε_n(m, δ) = √(ln(2^(2^n + 1)/δ) / (2m)).
EpsilonValue epsilon_n(unsigned n, std::uint64_t m, double delta);

/// √((-ln w(n) + ln(2^(2^n + 1)/δ)) / (2m)); the same as ε_n(m, w(n)·δ).
double gml_penalty(unsigned n, std::uint64_t m, double delta, const WeightScheme& w);

/// 4 d ln(2d) + 2 ln r.
double vc_union_bound(unsigned d_max, unsigned r);

/// m^UC(|H_n|, ε/2, w(n)·δ).
std::uint64_t nul_sample_complexity(unsigned n, double epsilon, double delta,
                                    const WeightScheme& w);

/// 8 C ln(2n) / ε², the price of not knowing which H_n holds the comparator.
double nul_gap_bound(unsigned n, double epsilon, double c = 1.0);

inline constexpr unsigned kVcBruteforceMaxDepth = 3;

/// Exact VC dimension of H_n (capped at max_points) by exhaustive shattering
/// search over instances of length n + 1.
unsigned vc_dim_bruteforce(unsigned n, unsigned max_points);
/// Same, for the union of the classes H_n, n in ns.
unsigned vc_dim_bruteforce_union(std::span<const unsigned> ns, unsigned max_points);

}  // namespace gml
