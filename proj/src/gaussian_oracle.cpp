#include <bintail/exact_oracle.hpp>

namespace bintail {

namespace {

template <class R>
struct Certified {
  R value;
  R err;
};

// sum_{i>=0} x^{2i+1}/(2i+1)!!, truncated once the tail is below cutoff.
template <class R>
Certified<R> odd_double_factorial_series(const R& x, const R& cutoff) {
  const R u = unit_roundoff<R>();
  const R x2 = x * x;
  R term = x, sum = x;
  long i = 0;
  for (;; ++i) {
    R ratio = x2 / R(2 * i + 3);
    R next = term * ratio;
    // Once ratios fall below 1/2 the remaining tail is at most 2*next.
    if (ratio <= R(0.5) && 2 * next <= cutoff) {
      return {sum, sum * R(4 * i + 8) * u + 2 * next};
    }
    term = next;
    sum += term;
  }
}

// Laplace continued fraction of the Mills ratio; consecutive convergents
// bracket the limit from alternating sides.
template <class R>
Certified<R> mills_continued_fraction(const R& x, const R& rel_tol) {
  using std::abs;
  const R u = unit_roundoff<R>();
  R a_prev = 1, b_prev = 0;
  R a_cur = 0, b_cur = 1;
  R c_prev = 0;
  for (long m = 1; m < 1000000; ++m) {
    R coef = m == 1 ? R(1) : R(m - 1);
    R a_next = x * a_cur + coef * a_prev;
    R b_next = x * b_cur + coef * b_prev;
    a_prev = a_cur;
    b_prev = b_cur;
    a_cur = a_next;
    b_cur = b_next;
    R c = a_cur / b_cur;
    if (m >= 2) {
      R gap = abs(c - c_prev);
      if (gap <= rel_tol * c / 2) return {(c + c_prev) / 2, gap / 2 + c * R(4 * m + 8) * u};
    }
    c_prev = c;
    // Rescale to keep exponents bounded.
    if (abs(b_cur) > R(1e100)) {
      a_prev /= b_cur;
      b_prev /= b_cur;
      a_cur /= b_cur;
      b_cur = 1;
    }
  }
  throw std::runtime_error("Mills continued fraction did not converge");
}

template <class R>
R gaussian_density(const R& x) {
  using std::exp;
  return exp(-x * x / 2) / sqrt_2pi_v<R>();
}

template <class R>
R mills_lower_estimate(const R& x) {
  using std::sqrt;
  return (sqrt(4 + x * x) - x) / 2;
}

template <unsigned D>
bool try_upper_tail(const HighPrecision& xh, const HighPrecision& tolh, ExactReal& out) {
  using R = Float<D>;
  const R x(xh), tol(tolh);
  const R u = unit_roundoff<R>();
  R phi = gaussian_density(x);
  Certified<R> result;
  if (x <= 8) {
    auto s = odd_double_factorial_series(x, tol / (4 * phi));
    result.value = R(0.5) - phi * s.value;
    result.err = phi * s.err + phi * s.value * 4 * u + u;
  } else {
    R scale = phi * mills_lower_estimate(x);
    auto m = mills_continued_fraction(x, tol / (4 * scale));
    result.value = phi * m.value;
    result.err = phi * m.err + result.value * 4 * u;
  }
  if (result.err > tol) return false;
  out = ExactReal::from_float<D>(result.value, result.err);
  return true;
}

template <unsigned D>
bool try_mills(const HighPrecision& xh, const HighPrecision& rel_tolh, ExactReal& out) {
  using R = Float<D>;
  using std::exp;
  const R x(xh), rel_tol(rel_tolh);
  const R u = unit_roundoff<R>();
  R lower = mills_lower_estimate(x);
  Certified<R> result;
  if (x <= 8) {
    // Phi(-x)/phi(x) = 1/(2 phi(x)) - series
    R half_inv = sqrt_2pi_v<R>() * exp(x * x / 2) / 2;
    auto s = odd_double_factorial_series(x, rel_tol * lower / 4);
    result.value = half_inv - s.value;
    result.err = half_inv * 6 * u + s.err + result.value * 2 * u;
  } else {
    result = mills_continued_fraction(x, rel_tol / 2);
  }
  if (result.err > rel_tol * lower) return false;
  out = ExactReal::from_float<D>(result.value, result.err);
  return true;
}

template <class Fn50, class Fn100, class Fn200>
ExactReal escalate(unsigned start, Fn50 f50, Fn100 f100, Fn200 f200) {
  ExactReal out;
  if (start <= 50 && f50(out)) return out;
  if (start <= 100 && f100(out)) return out;
  if (f200(out)) return out;
  throw PreconditionError("requested tolerance is below the achievable precision");
}

}  // namespace

ExactReal gaussian_upper_tail(const HighPrecision& x, const HighPrecision& tol,
                              const OracleOptions& opts) {
  if (x < 0) throw PreconditionError("gaussian_upper_tail requires x >= 0");
  if (!(tol > 0)) throw PreconditionError("gaussian_upper_tail requires tol > 0");
  if (x == 0) return ExactReal(Rational(1, 2));
  return escalate(
      precision_tier(opts.digits), [&](ExactReal& o) { return try_upper_tail<50>(x, tol, o); },
      [&](ExactReal& o) { return try_upper_tail<100>(x, tol, o); },
      [&](ExactReal& o) { return try_upper_tail<200>(x, tol, o); });
}

ExactReal gaussian_upper_tail(double x, double tol, const OracleOptions& opts) {
  return gaussian_upper_tail(HighPrecision(x), HighPrecision(tol), opts);
}

ExactReal mills_ratio(const HighPrecision& x, const HighPrecision& rel_tol, const OracleOptions& opts) {
  if (x < 0) throw PreconditionError("mills_ratio requires x >= 0");
  if (!(rel_tol > 0)) throw PreconditionError("mills_ratio requires tol > 0");
  return escalate(
      precision_tier(opts.digits), [&](ExactReal& o) { return try_mills<50>(x, rel_tol, o); },
      [&](ExactReal& o) { return try_mills<100>(x, rel_tol, o); },
      [&](ExactReal& o) { return try_mills<200>(x, rel_tol, o); });
}

}  // namespace bintail
