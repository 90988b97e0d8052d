#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace idxcode {

/// Exact arbitrary-precision rational; always held in canonical form
/// (coprime, positive denominator) by the underlying type.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

/// "5/2" for proper fractions, "3" for integers.
inline std::string rational_string(const Rational& r) {
  const BigInt num = numerator_of(r);
  const BigInt den = denominator_of(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline BigInt rational_ceil(const Rational& r) {
  const BigInt num = numerator_of(r);
  const BigInt den = denominator_of(r);
  BigInt q = num / den;
  if (num % den != 0 && num > 0) ++q;
  return q;
}

}  // namespace idxcode
