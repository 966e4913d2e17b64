#include "gml/synth.hpp"

#include <limits>
#include <random>
#include <string>

#include "gml/config.hpp"
#include "gml/error.hpp"
#include "gml/measure.hpp"

namespace gml {

namespace {

using boost::multiprecision::cpp_int;

struct SmallFraction {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
};

SmallFraction to_small(const Rational& r, const char* what) {
  const cpp_int num = boost::multiprecision::numerator(r);
  const cpp_int den = boost::multiprecision::denominator(r);
  if (den > std::numeric_limits<std::uint64_t>::max()) {
    fail(ErrorCode::Config, std::string(what) + " denominator does not fit in 64 bits");
  }
  return {num.convert_to<std::uint64_t>(), den.convert_to<std::uint64_t>()};
}

// Uniform integer in [0, bound) by rejection on the raw engine output.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 1) return 0;
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

bool draw(std::mt19937_64& rng, const SmallFraction& p) { return bounded(rng, p.den) < p.num; }

Rational cell_mass(Cell c, unsigned depth, const SyntheticDistribution& d) {
  if (d.is_uniform()) {
    cpp_int den = 1;
    den <<= depth;
    return Rational(cpp_int(1), den);
  }
  Rational mass = 1;
  for (unsigned i = 0; i < depth; ++i) {
    const bool one = (c >> (depth - 1 - i)) & 1U;
    const Rational& p = d.bit_probabilities()[i];
    mass *= one ? p : Rational(1 - p);
  }
  return mass;
}

// Masses of all 2^depth cells, built one bit at a time.
std::vector<Rational> all_cell_masses(unsigned depth, const SyntheticDistribution& d) {
  const std::size_t count = std::size_t{1} << depth;
  if (d.is_uniform()) {
    cpp_int den = 1;
    den <<= depth;
    return std::vector<Rational>(count, Rational(cpp_int(1), den));
  }
  std::vector<Rational> masses{Rational(1)};
  for (unsigned i = 0; i < depth; ++i) {
    const Rational& p = d.bit_probabilities()[i];
    const Rational q = 1 - p;
    std::vector<Rational> next;
    next.reserve(masses.size() * 2);
    for (const Rational& m : masses) {
      next.push_back(m * q);
      next.push_back(m * p);
    }
    masses = std::move(next);
  }
  return masses;
}

void require_depth_fits(unsigned depth, const SyntheticDistribution& d, const char* what) {
  if (depth > d.length()) {
    fail(ErrorCode::InstanceTooShort, std::string(what) + ": depth " + std::to_string(depth) +
                                          " exceeds instance length " +
                                          std::to_string(d.length()));
  }
}

}  // namespace

SyntheticDistribution::SyntheticDistribution(std::vector<Rational> p, Hypothesis target,
                                             Rational noise, unsigned length)
    : bit_probabilities_(std::move(p)),
      target_(std::move(target)),
      noise_(std::move(noise)),
      length_(length) {
  if (noise_ < 0 || noise_ * 2 >= 1) {
    fail(ErrorCode::Config, "noise rate must lie in [0, 1/2), got " + format_rational(noise_));
  }
  if (length_ < target_.depth()) {
    fail(ErrorCode::Config, "instance length " + std::to_string(length_) +
                                " is shorter than target depth " +
                                std::to_string(target_.depth()));
  }
  for (const Rational& q : bit_probabilities_) {
    if (q < 0 || q > 1) {
      fail(ErrorCode::Config, "bit probability " + format_rational(q) + " outside [0,1]");
    }
    to_small(q, "bit probability");
  }
  to_small(noise_, "noise rate");
}

SyntheticDistribution SyntheticDistribution::uniform(Hypothesis target, Rational noise,
                                                     unsigned length) {
  if (length < 1) fail(ErrorCode::Config, "instance length must be >= 1");
  return SyntheticDistribution({}, std::move(target), std::move(noise), length);
}

SyntheticDistribution SyntheticDistribution::bernoulli(std::vector<Rational> bit_probabilities,
                                                       Hypothesis target, Rational noise) {
  if (bit_probabilities.empty()) fail(ErrorCode::Config, "bernoulli model needs >= 1 position");
  const auto length = static_cast<unsigned>(bit_probabilities.size());
  return SyntheticDistribution(std::move(bit_probabilities), std::move(target),
                               std::move(noise), length);
}

Rational SyntheticDistribution::bit_probability(unsigned i) const {
  if (is_uniform()) return Rational(1, 2);
  return bit_probabilities_.at(i);
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t a, std::uint64_t b) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(root) ^ a) ^ b);
}

LabeledSample sample(const SyntheticDistribution& d, std::uint64_t m, std::uint64_t seed) {
  if (m < 1) fail(ErrorCode::InvalidArgument, "sample size m must be >= 1");
  std::mt19937_64 rng(seed);
  const SmallFraction noise = to_small(d.noise(), "noise rate");
  std::vector<SmallFraction> probs;
  for (const Rational& p : d.bit_probabilities()) probs.push_back(to_small(p, "bit probability"));

  std::vector<LabeledExample> examples;
  examples.reserve(m);
  std::vector<std::uint8_t> bits(d.length());
  for (std::uint64_t i = 0; i < m; ++i) {
    if (d.is_uniform()) {
      std::uint64_t word = 0;
      for (unsigned j = 0; j < d.length(); ++j) {
        if (j % 64 == 0) word = rng();
        bits[j] = static_cast<std::uint8_t>((word >> (63 - j % 64)) & 1U);
      }
    } else {
      for (unsigned j = 0; j < d.length(); ++j) bits[j] = draw(rng, probs[j]) ? 1 : 0;
    }
    LabeledExample e;
    e.x = BitString::from_bits(bits);
    e.y = evaluate(d.target(), e.x);
    if (draw(rng, noise)) e.y = flip(e.y);
    examples.push_back(std::move(e));
  }
  return LabeledSample(std::move(examples));
}

Rational cylinder_mass(const Hypothesis& h, const SyntheticDistribution& d) {
  require_depth_fits(h.depth(), d, "cylinder mass");
  if (d.is_uniform()) return to_rational(premeasure(h));
  Rational total = 0;
  for (Cell c : h.cells()) total += cell_mass(c, h.depth(), d);
  return total;
}

Rational true_risk(const Hypothesis& h, const SyntheticDistribution& d) {
  require_depth_fits(h.depth(), d, "true risk");
  const Rational& eta = d.noise();
  return eta + (1 - 2 * eta) * cylinder_mass(symmetric_difference_cells(h, d.target()), d);
}

std::vector<CellErrorMass> cell_error_masses(unsigned n, const SyntheticDistribution& d) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "depth must be >= 1");
  require_depth_fits(n, d, "cell error masses");
  require_within_cap(n, "cell error masses");

  const Hypothesis& target = d.target();
  const unsigned td = target.depth();
  const std::vector<Rational> masses = all_cell_masses(n, d);

  // Mass of each depth-n cell lying inside h*.
  std::vector<Rational> inside(masses.size());
  if (td <= n) {
    for (std::size_t c = 0; c < masses.size(); ++c) {
      if (target.contains(c >> (n - td))) inside[c] = masses[c];
    }
  } else {
    for (Cell t : target.cells()) inside[t >> (td - n)] += cell_mass(t, td, d);
  }

  const Rational& eta = d.noise();
  const Rational keep = 1 - eta;
  std::vector<CellErrorMass> out(masses.size());
  for (std::size_t c = 0; c < masses.size(); ++c) {
    const Rational outside = masses[c] - inside[c];
    out[c].predict_one = inside[c] * eta + outside * keep;
    out[c].predict_zero = inside[c] * keep + outside * eta;
  }
  return out;
}

}  // namespace gml
