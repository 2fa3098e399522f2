#pragma once

#include <cstdint>

#include "schmidt/error.hpp"
#include "schmidt/rational.hpp"

namespace schmidt {

namespace detail {

// Stern's diatomic sequence; fusc(k)/fusc(k+1) walks the Calkin-Wilf tree
// breadth first.
inline mpz_class fusc(std::uint64_t n) {
  mpz_class a = 1, b = 0;
  while (n > 0) {
    if (n & 1U)
      b += a;
    else
      a += b;
    n >>= 1U;
  }
  return b;
}

}  // namespace detail

/// k-th positive rational (k >= 1) in Calkin-Wilf breadth-first order.
inline Rational calkin_wilf(std::uint64_t k) {
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "Calkin-Wilf index starts at 1");
  return Rational(mpq_class(detail::fusc(k), detail::fusc(k + 1)));
}

/// Bijection from the naturals onto the nonzero rationals:
/// q(2k) = c(k+1), q(2k+1) = -c(k+1).
inline Rational enumerate_rationals(std::uint64_t j) {
  Rational c = calkin_wilf(j / 2 + 1);
  return j % 2 == 0 ? c : -c;
}

/// Rational of least denominator in the closed range [lo, hi] (ties broken
/// toward zero). Continued-fraction descent of the Stern-Brocot tree.
inline Rational simplest_between(const Rational& lo, const Rational& hi) {
  if (hi < lo) throw Error(ErrorKind::InvalidArgument, "empty range " + lo.str() + ".." + hi.str());
  if (lo.sign() <= 0 && hi.sign() >= 0) return Rational(0);
  if (hi.sign() < 0) return -simplest_between(-hi, -lo);
  // 0 < lo <= hi
  Rational n = lo.ceil();
  if (n <= hi) return n;
  Rational whole = lo.floor();
  // whole < lo <= hi < whole + 1
  Rational frac = simplest_between((hi - whole).reciprocal(), (lo - whole).reciprocal());
  return whole + frac.reciprocal();
}

}  // namespace schmidt
