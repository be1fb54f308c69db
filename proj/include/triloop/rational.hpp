#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace triloop {

// Exact arbitrary-precision integers and rationals.  cpp_rational keeps the
// canonical form we rely on everywhere: lowest terms, denominator > 0.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int num(const Rational& r) { return numerator(r); }
inline Int den(const Rational& r) { return denominator(r); }

inline int sign_of(const Int& x) { return x.sign(); }
inline int sign_of(const Rational& r) { return numerator(r).sign(); }

inline Int int_pow(const Int& base, std::uint64_t exp) {
  Int result = 1;
  Int b = base;
  std::uint64_t e = exp;
  while (e > 0) {
    if (e & 1) result *= b;
    b *= b;
    e >>= 1;
  }
  return result;
}

inline Rational rat_pow(const Rational& base, std::uint64_t exp) {
  return Rational(int_pow(numerator(base), exp), int_pow(denominator(base), exp));
}

// Floor division with sign semantics of mathematical floor, not C++ trunc.
inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Int ceil_div(const Int& a, const Int& b) { return -floor_div(-a, b); }

inline Int rat_floor(const Rational& r) { return floor_div(numerator(r), denominator(r)); }
inline Int rat_ceil(const Rational& r) { return ceil_div(numerator(r), denominator(r)); }

inline std::string to_string(const Int& x) { return x.str(); }

// "p/q" in lowest terms, "p" when integral.
inline std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

} // namespace triloop
