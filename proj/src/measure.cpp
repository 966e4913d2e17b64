#include "gml/measure.hpp"

#include <algorithm>
#include <string>

#include "gml/config.hpp"
#include "gml/error.hpp"

namespace gml {

DyadicRational premeasure(const Hypothesis& h) {
  return DyadicRational(h.cell_count(), h.depth());
}

AdditivityWitness check_finite_additivity(std::span<const Hypothesis> hs) {
  for (std::size_t i = 0; i < hs.size(); ++i) {
    for (std::size_t j = i + 1; j < hs.size(); ++j) {
      if (combine(hs[i], hs[j], SetOp::Intersection).cell_count() != 0) {
        fail(ErrorCode::Disjointness, "hypotheses " + std::to_string(i) + " (" +
                                          hs[i].to_string() + ") and " + std::to_string(j) +
                                          " (" + hs[j].to_string() + ") overlap");
      }
    }
  }
  AdditivityWitness w;
  if (hs.empty()) {
    w.holds = true;
    return w;
  }
  Hypothesis acc = hs.front();
  w.sum_of_measures = premeasure(hs.front());
  for (std::size_t i = 1; i < hs.size(); ++i) {
    acc = combine(acc, hs[i], SetOp::Union);
    w.sum_of_measures += premeasure(hs[i]);
  }
  w.union_measure = premeasure(acc);
  w.holds = w.union_measure == w.sum_of_measures;
  return w;
}

Hypothesis bit_is_one_cylinder(unsigned position) {
  if (position < 1) fail(ErrorCode::InvalidArgument, "bit positions are 1-based");
  require_within_cap(position, "cylinder");
  // Cells of length p ending in 1: the 2^(p-1) odd integers below 2^p.
  std::vector<Cell> cells;
  cells.reserve(std::size_t{1} << (position - 1));
  for (Cell prefix = 0; prefix < (Cell{1} << (position - 1)); ++prefix) {
    cells.push_back((prefix << 1) | 1U);
  }
  return Hypothesis::from_cells(position, std::move(cells));
}

std::vector<DyadicRational> shrinking_intersection_measures(unsigned count) {
  if (count < 1) fail(ErrorCode::InvalidArgument, "intersection count must be >= 1");
  require_within_cap(2 * count - 1, "shrinking intersections");
  std::vector<DyadicRational> out;
  out.reserve(count);
  Hypothesis acc = bit_is_one_cylinder(1);
  out.push_back(premeasure(acc));
  for (unsigned k = 2; k <= count; ++k) {
    acc = combine(acc, bit_is_one_cylinder(2 * k - 1), SetOp::Intersection);
    out.push_back(premeasure(acc));
  }
  return out;
}

}  // namespace gml
