#include "gml/dyadic.hpp"

#include <bit>
#include <cmath>

#include "gml/error.hpp"

namespace gml {

namespace {

__extension__ typedef unsigned __int128 u128;

inline constexpr unsigned kMaxLog2Denominator = 126;

DyadicRational reduce_wide(u128 numerator, unsigned log2_denominator) {
  if (numerator == 0) return DyadicRational::zero();
  while ((numerator & 1U) == 0 && log2_denominator > 0) {
    numerator >>= 1;
    --log2_denominator;
  }
  if (numerator >> 64 != 0) {
    fail(ErrorCode::Overflow, "dyadic numerator does not fit in 64 bits");
  }
  return DyadicRational(static_cast<std::uint64_t>(numerator), log2_denominator);
}

}  // namespace

DyadicRational::DyadicRational(std::uint64_t numerator, unsigned log2_denominator) {
  if (log2_denominator > kMaxLog2Denominator) {
    fail(ErrorCode::Overflow, "dyadic denominator exponent exceeds 126");
  }
  if (numerator == 0) return;
  const unsigned tz = std::min<unsigned>(std::countr_zero(numerator), log2_denominator);
  numerator_ = numerator >> tz;
  log2_denominator_ = log2_denominator - tz;
}

double DyadicRational::to_double() const noexcept {
  return std::ldexp(static_cast<double>(numerator_), -static_cast<int>(log2_denominator_));
}

std::string DyadicRational::to_string() const {
  std::string out = std::to_string(numerator_);
  if (log2_denominator_ == 0) return out;
  if (log2_denominator_ < 64) {
    return out + "/" + std::to_string(std::uint64_t{1} << log2_denominator_);
  }
  return out + "/2^" + std::to_string(log2_denominator_);
}

namespace {

// Both numerators scaled to the common exponent; requires the shift to fit.
std::pair<u128, u128> align(const DyadicRational& a, const DyadicRational& b, unsigned& e) {
  e = std::max(a.log2_denominator(), b.log2_denominator());
  const unsigned sa = e - a.log2_denominator();
  const unsigned sb = e - b.log2_denominator();
  if ((sa > 63 && a.numerator() != 0) || (sb > 63 && b.numerator() != 0)) {
    fail(ErrorCode::Overflow, "dyadic operands differ in scale by more than 2^63");
  }
  const u128 na = sa > 63 ? 0 : static_cast<u128>(a.numerator()) << sa;
  const u128 nb = sb > 63 ? 0 : static_cast<u128>(b.numerator()) << sb;
  return {na, nb};
}

}  // namespace

DyadicRational operator+(const DyadicRational& a, const DyadicRational& b) {
  unsigned e = 0;
  const auto [na, nb] = align(a, b, e);
  return reduce_wide(na + nb, e);
}

DyadicRational operator-(const DyadicRational& a, const DyadicRational& b) {
  unsigned e = 0;
  const auto [na, nb] = align(a, b, e);
  if (nb > na) fail(ErrorCode::Domain, "dyadic subtraction would be negative");
  return reduce_wide(na - nb, e);
}

std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b) {
  unsigned e = 0;
  const auto [na, nb] = align(a, b, e);
  return na <=> nb;
}

}  // namespace gml
