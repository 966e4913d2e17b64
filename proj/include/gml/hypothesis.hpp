#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gml {

/// An n-bit prefix, first bit in the most significant position.
using Cell = std::uint64_t;

enum class Label : std::uint8_t { Zero = 0, One = 1 };

inline Label flip(Label y) noexcept { return y == Label::One ? Label::Zero : Label::One; }
inline int to_int(Label y) noexcept { return static_cast<int>(y); }

/// A finite instance over {0,1}. Bits are packed left-aligned so that the
/// first n bits read off as a Cell with a single shift.
class BitString {
 public:
  BitString() = default;

  /// Parses a string of '0'/'1' characters of length >= 1.
  static BitString parse(std::string_view text);
  static BitString from_bits(std::span<const std::uint8_t> bits);

  std::size_t length() const noexcept { return length_; }
  bool bit(std::size_t i) const noexcept {
    return ((words_[i / 64] >> (63 - i % 64)) & 1U) != 0;
  }

  /// First n bits as a Cell. Requires 1 <= n <= min(length, 63).
  Cell prefix(unsigned n) const;

  std::string to_string() const;

  bool operator==(const BitString&) const = default;

 private:
  std::vector<std::uint64_t> words_;
  std::size_t length_ = 0;
};

/// Indicator of a union of depth-n cylinder sets. Cells are kept sorted and
/// unique; depth is never reduced, because it names the class index n.
class Hypothesis {
 public:
  static Hypothesis empty(unsigned depth);
  static Hypothesis full(unsigned depth);
  /// Sorts the cells; rejects duplicates and cells >= 2^depth.
  static Hypothesis from_cells(unsigned depth, std::vector<Cell> cells);
  /// Textual form `n:c1,c2,...`, e.g. `2:00,11`; `2:` is the empty hypothesis.
  static Hypothesis parse(std::string_view text);

  unsigned depth() const noexcept { return depth_; }
  std::span<const Cell> cells() const noexcept { return cells_; }
  std::size_t cell_count() const noexcept { return cells_.size(); }
  bool contains(Cell c) const noexcept;

  std::string to_string() const;

  bool operator==(const Hypothesis&) const = default;

 private:
  Hypothesis(unsigned depth, std::vector<Cell> cells) : depth_(depth), cells_(std::move(cells)) {}

  unsigned depth_ = 1;
  std::vector<Cell> cells_;
};

std::string cell_to_string(Cell cell, unsigned depth);

/// h(x) = 1 iff the first h.depth() bits of x form a cell of h.
Label evaluate(const Hypothesis& h, const BitString& x);

/// Splits every cell into its 2^(depth - h.depth()) extensions.
Hypothesis refine(const Hypothesis& h, unsigned depth);

Hypothesis complement(const Hypothesis& h);

enum class SetOp { Union, Intersection, Difference, SymmetricDifference };

/// Refines both operands to the larger depth, then applies op to the cell sets.
Hypothesis combine(const Hypothesis& a, const Hypothesis& b, SetOp op);

/// The disagreement region a Δ b.
Hypothesis symmetric_difference_cells(const Hypothesis& a, const Hypothesis& b);

/// Semantic equality: same cell set at the common refinement.
bool equivalent(const Hypothesis& a, const Hypothesis& b);

/// a ⊆ b as sets of instances.
bool is_subset(const Hypothesis& a, const Hypothesis& b);

struct LabeledExample {
  BitString x;
  Label y = Label::Zero;
};

/// Non-empty ordered sequence of labeled examples.
class LabeledSample {
 public:
  explicit LabeledSample(std::vector<LabeledExample> examples);

  std::size_t size() const noexcept { return examples_.size(); }
  std::span<const LabeledExample> examples() const noexcept { return examples_; }
  const LabeledExample& operator[](std::size_t i) const noexcept { return examples_[i]; }

  /// Shortest instance length in the sample.
  std::size_t min_length() const noexcept { return min_length_; }

  /// Throws ErrorCode::InstanceTooShort when some instance is shorter than depth.
  void require_length(unsigned depth) const;

 private:
  std::vector<LabeledExample> examples_;
  std::size_t min_length_ = 0;
};

}  // namespace gml
