#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace frechet {

/// Exact rational arithmetic for rectangle probabilities. Conversion from
/// double is exact (every finite double is a dyadic rational).
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline BigInt rational_floor(const Rational& r) {
  BigInt num = numerator(r), den = denominator(r);
  BigInt q = num / den;
  if (num < 0 && q * den != num) --q;
  return q;
}

}  // namespace frechet
