#pragma once

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <type_traits>

namespace bintail {

namespace mp = boost::multiprecision;

using BigInt = mp::mpz_int;
using Rational = mp::mpq_rational;

template <unsigned Digits>
using Float = mp::number<mp::mpfr_float_backend<Digits>, mp::et_off>;

// Working precision of the oracle and of escalated bound checks.
inline constexpr unsigned kHighDigits = 50;
using HighPrecision = Float<kHighDigits>;

template <class Real>
inline constexpr bool is_binary64 = std::is_same_v<Real, double>;

template <class Real>
const Real& pi_v() {
  static const Real value = boost::math::constants::pi<Real>();
  return value;
}

template <class Real>
const Real& ln_sqrt_2pi_v() {
  static const Real value = [] {
    using std::log;
    return log(2 * pi_v<Real>()) / 2;
  }();
  return value;
}

template <class Real>
const Real& sqrt_2pi_v() {
  static const Real value = [] {
    using std::sqrt;
    return sqrt(2 * pi_v<Real>());
  }();
  return value;
}

template <class Real>
const Real& euler_v() {
  static const Real value = [] {
    using std::exp;
    return exp(Real(1));
  }();
  return value;
}

// Unit roundoff of the type (half an ulp at 1).
template <class Real>
Real unit_roundoff() {
  return std::numeric_limits<Real>::epsilon() / 2;
}

inline HighPrecision to_high(const Rational& r) { return HighPrecision(r); }

}  // namespace bintail
