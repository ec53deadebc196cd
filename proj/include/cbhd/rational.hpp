#pragma once

#include <gmpxx.h>

#include <string>

namespace cbhd {

/// Exact fraction. GMP keeps every arithmetic result in lowest terms with a
/// positive denominator; values built from a raw numerator/denominator pair
/// must go through make_rational.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational make_rational(long num, long den = 1) {
  return make_rational(Integer(num), Integer(den));
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline double to_double(const Rational& r) { return r.get_d(); }

inline Rational abs(const Rational& r) { return Rational(::abs(r)); }

}  // namespace cbhd
