#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "gml/error.hpp"
#include "gml/hypothesis.hpp"

namespace gml::test {

inline Hypothesis random_hypothesis(std::mt19937_64& rng, unsigned depth) {
  std::vector<Cell> cells;
  const Cell n = Cell{1} << depth;
  for (Cell c = 0; c < n; ++c) {
    if (rng() & 1U) cells.push_back(c);
  }
  return Hypothesis::from_cells(depth, std::move(cells));
}

inline BitString random_bits(std::mt19937_64& rng, std::size_t length) {
  std::vector<std::uint8_t> bits(length);
  for (auto& b : bits) b = static_cast<std::uint8_t>(rng() & 1U);
  return BitString::from_bits(bits);
}

inline LabeledSample make_sample(const std::vector<std::pair<std::string, int>>& rows) {
  std::vector<LabeledExample> out;
  for (const auto& [x, y] : rows) {
    out.push_back({BitString::parse(x), y ? Label::One : Label::Zero});
  }
  return LabeledSample(std::move(out));
}

/// Code of the gml::Error thrown by fn, if any.
template <class Fn>
std::optional<ErrorCode> error_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace gml::test
