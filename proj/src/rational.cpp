#include "gml/rational.hpp"

#include <cctype>

#include "gml/error.hpp"

namespace gml {

namespace {

using boost::multiprecision::cpp_int;

cpp_int parse_digits(std::string_view digits, std::string_view whole) {
  if (digits.empty()) fail(ErrorCode::Parse, "malformed rational '" + std::string(whole) + "'");
  cpp_int v = 0;
  for (char ch : digits) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) {
      fail(ErrorCode::Parse, "malformed rational '" + std::string(whole) + "'");
    }
    v = v * 10 + (ch - '0');
  }
  return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational out;
  if (const auto slash = body.find('/'); slash != std::string_view::npos) {
    const cpp_int num = parse_digits(body.substr(0, slash), text);
    const cpp_int den = parse_digits(body.substr(slash + 1), text);
    if (den == 0) fail(ErrorCode::Parse, "zero denominator in '" + std::string(text) + "'");
    out = Rational(num, den);
  } else if (const auto dot = body.find('.'); dot != std::string_view::npos) {
    const auto int_part = body.substr(0, dot);
    const auto frac_part = body.substr(dot + 1);
    const cpp_int whole = int_part.empty() ? cpp_int(0) : parse_digits(int_part, text);
    const cpp_int frac = parse_digits(frac_part, text);
    cpp_int scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
    out = Rational(whole * scale + frac, scale);
  } else {
    out = Rational(parse_digits(body, text));
  }
  return negative ? Rational(-out) : out;
}

std::string format_rational(const Rational& r) {
  const auto num = boost::multiprecision::numerator(r);
  const auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Rational to_rational(const DyadicRational& d) {
  using boost::multiprecision::cpp_int;
  cpp_int den = 1;
  den <<= d.log2_denominator();
  return Rational(cpp_int(d.numerator()), den);
}

}  // namespace gml
