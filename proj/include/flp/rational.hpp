#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cstdio>
#include <string>
#include <string_view>

#include "flp/errors.hpp"

namespace flp {

// Exact arbitrary-precision rational, always canonical (positive denominator, lowest terms).
using Rational = mpq_class;

// A position (or a distance/cost) on the real line.
using Coord = Rational;

namespace detail {

inline bool all_digits(std::string_view s) {
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

inline std::size_t first_non_digit(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  return i;
}

}  // namespace detail

// Parses "3", "-0.5", "+1.25", ".5", "7/2", "-3/4" exactly. Decimals become p/10^d.
inline Rational parse_rational(std::string_view text) {
  if (text.empty()) throw ParseError("empty number", 0);

  std::size_t pos = 0;
  bool negative = false;
  if (text[0] == '+' || text[0] == '-') {
    negative = text[0] == '-';
    pos = 1;
  }
  const std::string_view body = text.substr(pos);
  if (body.empty()) throw ParseError("sign without digits", pos);

  Rational value;
  if (const auto slash = body.find('/'); slash != std::string_view::npos) {
    const std::string_view num = body.substr(0, slash);
    const std::string_view den = body.substr(slash + 1);
    if (num.empty()) throw ParseError("missing numerator", pos);
    if (!detail::all_digits(num)) {
      throw ParseError("invalid character in numerator", pos + detail::first_non_digit(num));
    }
    if (den.empty()) throw ParseError("missing denominator", pos + slash + 1);
    if (!detail::all_digits(den)) {
      throw ParseError("invalid character in denominator",
                       pos + slash + 1 + detail::first_non_digit(den));
    }
    mpz_class d(std::string(den), 10);
    if (d == 0) throw ParseError("zero denominator", pos + slash + 1);
    value = Rational(mpz_class(std::string(num), 10), d);
    value.canonicalize();
  } else {
    const auto dot = body.find('.');
    const std::string_view whole = body.substr(0, dot);
    const std::string_view frac =
        dot == std::string_view::npos ? std::string_view{} : body.substr(dot + 1);
    if (!detail::all_digits(whole)) {
      throw ParseError("invalid character in number", pos + detail::first_non_digit(whole));
    }
    if (!detail::all_digits(frac)) {
      throw ParseError("invalid character in fraction",
                       pos + dot + 1 + detail::first_non_digit(frac));
    }
    if (whole.empty() && frac.empty()) throw ParseError("no digits", pos);
    std::string digits(whole);
    digits.append(frac);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    value = Rational(mpz_class(digits, 10), scale);
    value.canonicalize();
  }
  if (negative) value = -value;
  return value;
}

// "p/q" or "p" when the denominator is one.
inline std::string to_string(const Rational& value) { return value.get_str(); }

inline double to_double(const Rational& value) { return value.get_d(); }

// Display-only decimal rendering with 15 significant digits.
inline std::string to_float_string(const Rational& value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.15g", value.get_d());
  return buffer;
}

// Canonical num/den; mpq_class(num, den) alone does not reduce.
inline Rational make_rational(long num, long den) {
  if (den == 0) throw InputError("zero denominator");
  Rational q{mpz_class(num), mpz_class(den)};
  q.canonicalize();
  return q;
}

inline Rational abs_diff(const Rational& a, const Rational& b) {
  Rational d = a - b;
  if (sgn(d) < 0) d = -d;
  return d;
}

}  // namespace flp
