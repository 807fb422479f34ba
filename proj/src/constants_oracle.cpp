#include <bintail/exact_oracle.hpp>

#include <gmp.h>

namespace bintail {

namespace {

BigInt factorial(std::int64_t k) {
  BigInt r;
  mpz_fac_ui(r.backend().data(), static_cast<unsigned long>(k));
  return r;
}

// P_k = sum_{i<k} k^i (k-1)!/i!, so that sum_{i<k} k^i/i! = P_k/(k-1)!.
BigInt ramanujan_partial(std::int64_t k) {
  BigInt term = factorial(k - 1);
  BigInt sum = term;
  for (std::int64_t i = 1; i < k; ++i) {
    term *= k;
    term /= i;
    sum += term;
  }
  return sum;
}

template <unsigned D>
struct ThetaEstimate {
  Float<D> theta;
  Float<D> err;
};

// theta_k = e^k k!/(2 k^k) - k P_k / k^k.
template <unsigned D>
ThetaEstimate<D> theta_at(std::int64_t k, const BigInt& partial, const BigInt& kfact,
                          const BigInt& kpow) {
  using R = Float<D>;
  using std::abs;
  using std::exp;
  const R u = unit_roundoff<R>();
  R a = exp(R(k)) * R(kfact) / (2 * R(kpow));
  R b(Rational(partial * k, kpow));
  R theta = a - b;
  R err = 2 * (abs(a) * 6 * u + abs(b) * 2 * u + abs(theta) * u);
  return {theta, err};
}

}  // namespace

RamanujanSolution ramanujan_theta_solution(std::int64_t k, const OracleOptions& opts) {
  if (k < 1) throw std::invalid_argument("ramanujan_theta: k must be a positive integer");
  BigInt partial = ramanujan_partial(k);
  BigInt kfact = factorial(k);
  BigInt kpow = mp::pow(BigInt(k), static_cast<unsigned>(k));

  // Escalate through the precision tiers until 30 significant digits agree.
  const unsigned start = precision_tier(opts.digits);
  ExactReal theta;
  unsigned used = start;
  auto agree = [](const auto& lo, const auto& hi) {
    using std::abs;
    HighPrecision a(lo.theta), b(hi.theta);
    return abs(a - b) <= abs(b) * HighPrecision("1e-30");
  };
  auto e50 = theta_at<50>(k, partial, kfact, kpow);
  auto e100 = theta_at<100>(k, partial, kfact, kpow);
  auto e200 = theta_at<200>(k, partial, kfact, kpow);
  if (start == 50 && agree(e50, e100)) {
    theta = ExactReal::from_float<50>(e50.theta, e50.err);
    used = 50;
  } else if (start <= 100 && agree(e100, e200)) {
    theta = ExactReal::from_float<100>(e100.theta, e100.err);
    used = 100;
  } else {
    theta = ExactReal::from_float<200>(e200.theta, e200.err);
    used = 200;
  }

  // Residual of the defining equation, evaluated at 200 digits.
  using W = Float<200>;
  using std::abs;
  using std::exp;
  W t(theta.value());
  W scale = W(kpow) / W(kfact);
  W sum(Rational(partial, factorial(k - 1)));
  W residual = exp(W(k)) / 2 - t * scale - sum;
  W bound = W(theta.error()) * scale + (exp(W(k)) + sum) * 8 * unit_roundoff<W>();
  return {theta, HighPrecision(residual), HighPrecision(bound), used};
}

ExactReal ramanujan_theta(std::int64_t k, const OracleOptions& opts) {
  return ramanujan_theta_solution(k, opts).theta;
}

ExactReal median_deficit_zeta(std::int64_t n, std::int64_t k, const OracleOptions& opts) {
  if (n < 2 || k < 1 || k > n - 1)
    throw PreconditionError("median_deficit_zeta requires 1 <= k <= n-1");
  BinomialParams at(n, k, Probability::rational(Rational(k, n)));
  // zeta = 1/(2 b_{n,k}) - B_{n,k-1}/b_{n,k} = 1/(2b) - (B_{n,k}/b - 1)
  ExactReal b = pmf_exact(at, opts);
  ExactReal ratio = tail_pmf_ratio_exact(at, opts);
  return ExactReal(Rational(1, 2)) / b - (ratio - ExactReal(1));
}

}  // namespace bintail
