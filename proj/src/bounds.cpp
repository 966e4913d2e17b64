#include "gml/bounds.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <unordered_set>

#include "gml/error.hpp"

namespace gml {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kMassSlack = 1e-12;

void require_open_unit(double v, const char* name) {
  if (!(v > 0.0 && v < 1.0)) {
    fail(ErrorCode::Domain, std::string(name) + " must lie in (0,1), got " + std::to_string(v));
  }
}

void require_index(unsigned n) {
  if (n < 1) fail(ErrorCode::Domain, "class index n must be >= 1");
}

// ln(2^(2^n + 1)) computed as a product to stay finite for moderate n.
double log_two_class_size(unsigned n) { return (std::ldexp(1.0, static_cast<int>(n)) + 1.0) * kLn2; }

double hoeffding_radius(double log_class_size, double delta, std::uint64_t m) {
  return std::sqrt((log_class_size + kLn2 - std::log(delta)) / (2.0 * static_cast<double>(m)));
}

}  // namespace

WeightScheme WeightScheme::harmonic() { return {Kind::Harmonic, {}, Tail::Zero}; }
WeightScheme WeightScheme::geometric() { return {Kind::Geometric, {}, Tail::Zero}; }

WeightScheme WeightScheme::custom(std::vector<double> table, Tail tail) {
  if (table.empty()) fail(ErrorCode::Config, "custom weight table must be non-empty");
  double total = 0.0;
  for (double w : table) {
    if (!(w >= 0.0 && w <= 1.0)) {
      fail(ErrorCode::Config, "custom weight " + std::to_string(w) + " outside [0,1]");
    }
    total += w;
  }
  if (tail == Tail::Geometric) total += table.back();
  if (total > 1.0 + kMassSlack) {
    fail(ErrorCode::Config, "custom weights sum to " + std::to_string(total) + " > 1");
  }
  return {Kind::Custom, std::move(table), tail};
}

std::string WeightScheme::name() const {
  switch (kind_) {
    case Kind::Harmonic: return "harmonic";
    case Kind::Geometric: return "geometric";
    case Kind::Custom: return "custom";
  }
  return "custom";
}

double WeightScheme::weight(unsigned n) const {
  require_index(n);
  switch (kind_) {
    case Kind::Harmonic: {
      const double nn = static_cast<double>(n);
      return 6.0 / (std::numbers::pi * std::numbers::pi * nn * nn);
    }
    case Kind::Geometric: return std::ldexp(1.0, -static_cast<int>(n));
    case Kind::Custom: {
      if (n <= table_.size()) return table_[n - 1];
      if (tail_ == Tail::Zero) return 0.0;
      return std::ldexp(table_.back(), -static_cast<int>(n - table_.size()));
    }
  }
  return 0.0;
}

double WeightScheme::neg_log_weight(unsigned n) const {
  require_index(n);
  switch (kind_) {
    case Kind::Harmonic: {
      const double nn = static_cast<double>(n);
      return std::log(std::numbers::pi * std::numbers::pi / 6.0) + 2.0 * std::log(nn);
    }
    case Kind::Geometric: return static_cast<double>(n) * kLn2;
    case Kind::Custom: {
      if (n <= table_.size() || tail_ == Tail::Zero) {
        const double w = weight(n);
        return w > 0.0 ? -std::log(w) : std::numeric_limits<double>::infinity();
      }
      const double last = table_.back();
      if (last <= 0.0) return std::numeric_limits<double>::infinity();
      return -std::log(last) + static_cast<double>(n - table_.size()) * kLn2;
    }
  }
  return std::numeric_limits<double>::infinity();
}

double WeightScheme::partial_sum(unsigned n_max) const {
  // Kahan summation; the harmonic tail terms are far below one ulp of the sum.
  double sum = 0.0;
  double carry = 0.0;
  for (unsigned n = 1; n <= n_max; ++n) {
    const double y = weight(n) - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return sum;
}

std::uint64_t class_size(unsigned n) {
  require_index(n);
  if (n > 5) {
    fail(ErrorCode::Overflow, "|H_" + std::to_string(n) + "| = 2^(2^" + std::to_string(n) +
                                  ") does not fit in 64 bits; use log_class_size");
  }
  return std::uint64_t{1} << (1U << n);
}

double log_class_size(unsigned n) {
  require_index(n);
  return std::ldexp(1.0, static_cast<int>(n)) * kLn2;
}

std::uint64_t uc_sample_complexity(double log_class_size, double epsilon, double delta) {
  require_open_unit(epsilon, "epsilon");
  require_open_unit(delta, "delta");
  if (!(log_class_size >= 0.0) || !std::isfinite(log_class_size)) {
    fail(ErrorCode::Domain, "log class size must be finite and >= 0");
  }
  const double raw = (log_class_size + kLn2 - std::log(delta)) / (2.0 * epsilon * epsilon);
  if (raw >= 1.8e19) fail(ErrorCode::Overflow, "sample complexity exceeds 64-bit range");
  auto m = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(raw)));
  // Snap the ceiling onto the minimization semantics so rounding in `raw`
  // cannot move m off the smallest admissible sample size.
  while (m > 1 && hoeffding_radius(log_class_size, delta, m - 1) <= epsilon) --m;
  while (hoeffding_radius(log_class_size, delta, m) > epsilon) ++m;
  return m;
}

std::uint64_t agnostic_sample_complexity(double log_class_size, double epsilon, double delta) {
  require_open_unit(epsilon, "epsilon");
  return uc_sample_complexity(log_class_size, epsilon / 2.0, delta);
}

EpsilonValue epsilon_n(unsigned n, std::uint64_t m, double delta) {
  require_index(n);
  require_open_unit(delta, "delta");
  if (m < 1) fail(ErrorCode::Domain, "sample size m must be >= 1");
  const double v = std::sqrt((log_two_class_size(n) - std::log(delta)) /
                             (2.0 * static_cast<double>(m)));
  return {v, v >= 1.0};
}

double gml_penalty(unsigned n, std::uint64_t m, double delta, const WeightScheme& w) {
  require_index(n);
  require_open_unit(delta, "delta");
  if (m < 1) fail(ErrorCode::Domain, "sample size m must be >= 1");
  const double neg_log_w = w.neg_log_weight(n);
  if (std::isinf(neg_log_w)) {
    fail(ErrorCode::ZeroWeight, "weight w(" + std::to_string(n) + ") is zero");
  }
  return std::sqrt((neg_log_w + log_two_class_size(n) - std::log(delta)) /
                   (2.0 * static_cast<double>(m)));
}

double vc_union_bound(unsigned d_max, unsigned r) {
  if (d_max < 1 || r < 1) fail(ErrorCode::Domain, "vc_union_bound needs d_max >= 1 and r >= 1");
  const double d = d_max;
  return 4.0 * d * std::log(2.0 * d) + 2.0 * std::log(static_cast<double>(r));
}

std::uint64_t nul_sample_complexity(unsigned n, double epsilon, double delta,
                                    const WeightScheme& w) {
  require_index(n);
  require_open_unit(epsilon, "epsilon");
  require_open_unit(delta, "delta");
  const double wn = w.weight(n);
  if (wn <= 0.0) fail(ErrorCode::ZeroWeight, "weight w(" + std::to_string(n) + ") is zero");
  return uc_sample_complexity(log_class_size(n), epsilon / 2.0, wn * delta);
}

double nul_gap_bound(unsigned n, double epsilon, double c) {
  require_index(n);
  if (!(epsilon > 0.0 && epsilon <= 1.0)) fail(ErrorCode::Domain, "epsilon must lie in (0,1]");
  if (!(c > 0.0)) fail(ErrorCode::Domain, "gap constant C must be > 0");
  return 8.0 * c * std::log(2.0 * static_cast<double>(n)) / (epsilon * epsilon);
}

unsigned vc_dim_bruteforce(unsigned n, unsigned max_points) {
  const unsigned ns[] = {n};
  return vc_dim_bruteforce_union(ns, max_points);
}

unsigned vc_dim_bruteforce_union(std::span<const unsigned> ns, unsigned max_points) {
  if (ns.empty()) fail(ErrorCode::InvalidArgument, "need at least one class index");
  const unsigned depth = *std::max_element(ns.begin(), ns.end());
  for (unsigned n : ns) {
    require_index(n);
    if (n > kVcBruteforceMaxDepth) {
      fail(ErrorCode::DepthCap, "vc_dim_bruteforce supports n <= 3, got " + std::to_string(n));
    }
  }
  if (max_points > (1U << depth) + 1) {
    fail(ErrorCode::DepthCap, "max_points must be <= 2^n + 1");
  }

  // Pool: all instances of length depth + 1, so pairs sharing a depth-n cell
  // are present and can never be shattered.
  const unsigned pool_bits = depth + 1;
  const unsigned pool = 1U << pool_bits;

  // Each hypothesis becomes the bitmask of pool points it labels 1.
  std::unordered_set<std::uint32_t> labelings;
  for (unsigned n : ns) {
    const unsigned cells = 1U << n;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << cells); ++mask) {
      std::uint32_t lab = 0;
      for (unsigned p = 0; p < pool; ++p) {
        const unsigned cell = p >> (pool_bits - n);
        if ((mask >> cell) & 1U) lab |= 1U << p;
      }
      labelings.insert(lab);
    }
  }

  unsigned best = 0;
  for (unsigned k = 1; k <= max_points; ++k) {
    bool any = false;
    for (std::uint32_t subset = 0; subset < (std::uint32_t{1} << pool) && !any; ++subset) {
      if (static_cast<unsigned>(std::popcount(subset)) != k) continue;
      std::vector<bool> seen(std::size_t{1} << k, false);
      std::size_t distinct = 0;
      for (std::uint32_t lab : labelings) {
        std::size_t pattern = 0;
        unsigned bit = 0;
        for (unsigned p = 0; p < pool; ++p) {
          if ((subset >> p) & 1U) {
            if ((lab >> p) & 1U) pattern |= std::size_t{1} << bit;
            ++bit;
          }
        }
        if (!seen[pattern]) {
          seen[pattern] = true;
          ++distinct;
        }
      }
      any = distinct == seen.size();
    }
    if (!any) break;
    best = k;
  }
  return best;
}

}  // namespace gml
