#pragma once

#include <span>
#include <vector>

#include "gml/dyadic.hpp"
#include "gml/hypothesis.hpp"

namespace gml {

/// Uniform dyadic premeasure P0(h) = |h.cells| / 2^h.depth, exact.
DyadicRational premeasure(const Hypothesis& h);

struct AdditivityWitness {
  bool holds = false;
  DyadicRational union_measure;
  DyadicRational sum_of_measures;
};

/// Checks P0(∪ h_i) == Σ P0(h_i) for pairwise-disjoint hypotheses. Overlapping
/// inputs raise ErrorCode::Disjointness naming the first overlapping pair.
AdditivityWitness check_finite_additivity(std::span<const Hypothesis> hs);

/// Depth-`position` hypothesis "the bit at 1-based `position` equals 1".
Hypothesis bit_is_one_cylinder(unsigned position);

/// [P0(∩_{j<=k} h_{2j-1})] for k = 1..K, where h_p = bit_is_one_cylinder(p).
/// The k-th entry is 2^-k; the limit set (ones at every odd position) has no
/// finite-depth description.
std::vector<DyadicRational> shrinking_intersection_measures(unsigned count);

}  // namespace gml
