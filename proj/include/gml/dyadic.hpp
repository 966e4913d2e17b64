#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace gml {

/// Exact value numerator / 2^log2_denominator, kept reduced (numerator odd,
/// or zero with log2_denominator 0). Arithmetic that cannot be represented
/// with a 64-bit numerator throws ErrorCode::Overflow.
class DyadicRational {
 public:
  constexpr DyadicRational() = default;
  DyadicRational(std::uint64_t numerator, unsigned log2_denominator);

  static DyadicRational zero() { return {}; }
  static DyadicRational one() { return {1, 0}; }

  std::uint64_t numerator() const noexcept { return numerator_; }
  unsigned log2_denominator() const noexcept { return log2_denominator_; }

  double to_double() const noexcept;
  /// "0", "1", "3/4", ...
  std::string to_string() const;

  friend DyadicRational operator+(const DyadicRational& a, const DyadicRational& b);
  /// Throws ErrorCode::Domain when b > a.
  friend DyadicRational operator-(const DyadicRational& a, const DyadicRational& b);
  DyadicRational& operator+=(const DyadicRational& other) { return *this = *this + other; }

  friend bool operator==(const DyadicRational&, const DyadicRational&) = default;
  friend std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b);

 private:
  std::uint64_t numerator_ = 0;
  unsigned log2_denominator_ = 0;
};

}  // namespace gml
