#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "gml/dyadic.hpp"

namespace gml {

using Rational = boost::multiprecision::cpp_rational;

/// Accepts "p/q", integers and finite decimals ("0.1" is exactly 1/10).
Rational parse_rational(std::string_view text);
/// "p/q" in lowest terms, or "p" for integers.
std::string format_rational(const Rational& r);
double to_double(const Rational& r);
Rational to_rational(const DyadicRational& d);

}  // namespace gml
