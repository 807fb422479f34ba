#include <bintail/exact_oracle.hpp>

#include <gmp.h>

namespace bintail {

namespace {

BigInt binomial_coefficient(std::int64_t n, std::int64_t k) {
  BigInt r;
  mpz_bin_uiui(r.backend().data(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

BigInt power(const BigInt& base, std::int64_t e) {
  return mp::pow(base, static_cast<unsigned>(e));
}

// Sums over j <= k of M_j = C(n,j) a^j c^(k-j), where p = a/d and c = d - a.
// Multiplying by c^(n-k)/d^n turns them into probabilities.
struct ScaledSums {
  BigInt mass;
  BigInt moment;
  BigInt last;
};

ScaledSums scaled_lower_sums(std::int64_t n, std::int64_t k, const BigInt& a, const BigInt& c) {
  ScaledSums s;
  BigInt m = power(c, k);
  s.mass = m;
  s.moment = 0;
  for (std::int64_t j = 0; j < k; ++j) {
    m *= a;
    m *= static_cast<unsigned long>(n - j);
    mpz_divexact(m.backend().data(), m.backend().data(), BigInt(c * (j + 1)).backend().data());
    s.mass += m;
    s.moment += m * (j + 1);
  }
  s.last = m;
  return s;
}

bool use_rational(const BinomialParams& params, const OracleOptions& opts) {
  return params.p.is_rational() && params.n <= opts.rational_n_limit;
}

struct RationalParts {
  BigInt a, c, d;
};

RationalParts split(const Rational& p) {
  RationalParts r;
  r.a = numerator(p);
  r.d = denominator(p);
  r.c = r.d - r.a;
  return r;
}

// Decimal backend: log-gamma pmf and ratio-recurrence tail sums.
template <class R>
struct LowerSide {
  R b, b_err;
  R tail, tail_err;
  R moment, moment_err;
};

template <class R>
LowerSide<R> decimal_lower_side(std::int64_t n, std::int64_t k, const Rational& p_exact) {
  using std::abs;
  using std::exp;
  using std::lgamma;
  using std::log;
  const R u = unit_roundoff<R>();
  const R p(p_exact);
  const R q(Rational(1 - p_exact));
  const R nn(n), kk(k);
  LowerSide<R> out;

  R lg_n = lgamma(nn + 1), lg_k = lgamma(kk + 1), lg_m = lgamma(R(n - k) + 1);
  R tk = k == 0 ? R(0) : kk * log(p);
  R tm = k == n ? R(0) : R(n - k) * log(q);
  R log_b = lg_n - lg_k - lg_m + tk + tm;
  R log_err = 4 * u * (abs(lg_n) + abs(lg_k) + abs(lg_m) + abs(tk) + abs(tm) + 1);
  out.b = exp(log_b);
  out.b_err = out.b * (2 * log_err + 4 * u);

  if (k == n) {
    out.tail = 1;
    out.tail_err = 0;
    out.moment = nn * p;
    out.moment_err = out.moment * 2 * u;
    return out;
  }
  if (k == 0) {
    out.tail = out.b;
    out.tail_err = out.b_err;
    out.moment = 0;
    out.moment_err = 0;
    return out;
  }

  R rho_k = q * kk / (p * R(n - k + 1));
  R s0, s1, trunc0 = 0, trunc1 = 0;
  long steps = 0;
  bool complement = !(rho_k < 1);
  if (!complement) {
    std::int64_t j = k;
    R t = 1;
    s0 = 1;
    s1 = kk;
    while (j > 0) {
      R rho = q * R(j) / (p * R(n - j + 1));
      R rem = t * rho / (1 - rho);
      if (rem < u * s0) {
        trunc0 = rem;
        trunc1 = rem * R(j);
        break;
      }
      t *= rho;
      --j;
      s0 += t;
      s1 += R(j) * t;
      ++steps;
    }
  } else {
    std::int64_t j = k + 1;
    R t = p * R(n - k) / (q * R(k + 1));
    s0 = t;
    s1 = R(j) * t;
    while (j < n) {
      R rho = p * R(n - j) / (q * R(j + 1));
      R rem = t * rho / (1 - rho);
      if (rem < u * s0) {
        trunc0 = rem;
        trunc1 = rem * nn;
        break;
      }
      t *= rho;
      ++j;
      s0 += t;
      s1 += R(j) * t;
      ++steps;
    }
  }
  R rel = R(6 * steps + 8) * u;
  R err0 = out.b_err * s0 + out.b * (s0 * rel + trunc0);
  R err1 = out.b_err * s1 + out.b * (s1 * rel + trunc1);
  if (!complement) {
    out.tail = out.b * s0;
    out.moment = out.b * s1;
    out.tail_err = err0;
    out.moment_err = err1;
  } else {
    out.tail = 1 - out.b * s0;
    out.moment = nn * p - out.b * s1;
    out.tail_err = err0 + 2 * u;
    out.moment_err = err1 + nn * p * 4 * u;
  }
  return out;
}

enum class Quantity { pmf, lower, mean, ratio };

template <unsigned D>
ExactReal decimal_quantity(std::int64_t n, std::int64_t k, const Rational& p, Quantity what) {
  using R = Float<D>;
  auto s = decimal_lower_side<R>(n, k, p);
  switch (what) {
    case Quantity::pmf:
      return ExactReal::from_float<D>(s.b, s.b_err);
    case Quantity::lower:
      return ExactReal::from_float<D>(s.tail, s.tail_err);
    case Quantity::mean: {
      if (k == 0) return ExactReal(0);
      R mu = s.moment / s.tail;
      R err = (s.moment_err + mu * s.tail_err) / (s.tail - s.tail_err) + mu * 4 * unit_roundoff<R>();
      return ExactReal::from_float<D>(mu, err);
    }
    case Quantity::ratio: {
      R r = s.tail / s.b;
      R err = (s.tail_err + r * s.b_err) / (s.b - s.b_err) + r * 4 * unit_roundoff<R>();
      return ExactReal::from_float<D>(r, err);
    }
  }
  return ExactReal();
}

ExactReal decimal_dispatch(std::int64_t n, std::int64_t k, const Rational& p, Quantity what,
                           const OracleOptions& opts) {
  switch (precision_tier(opts.digits)) {
    case 50:
      return decimal_quantity<50>(n, k, p, what);
    case 100:
      return decimal_quantity<100>(n, k, p, what);
    default:
      return decimal_quantity<200>(n, k, p, what);
  }
}

ExactReal evaluate(const BinomialParams& params, const OracleOptions& opts, Quantity what) {
  const std::int64_t n = params.n, k = params.k;
  if (!use_rational(params, opts)) return decimal_dispatch(n, k, params.p.as_rational(), what, opts);
  auto [a, c, d] = split(params.p.exact());
  if (what == Quantity::pmf) {
    BigInt num = binomial_coefficient(n, k) * power(a, k) * power(c, n - k);
    return ExactReal(Rational(num, power(d, n)));
  }
  ScaledSums s = scaled_lower_sums(n, k, a, c);
  switch (what) {
    case Quantity::lower:
      return ExactReal(Rational(s.mass * power(c, n - k), power(d, n)));
    case Quantity::mean:
      return ExactReal(Rational(s.moment, s.mass));
    case Quantity::ratio:
      return ExactReal(Rational(s.mass, s.last));
    default:
      return ExactReal();
  }
}

}  // namespace

unsigned precision_tier(unsigned digits) {
  if (digits <= 50) return 50;
  if (digits <= 100) return 100;
  if (digits <= 200) return 200;
  throw std::invalid_argument("oracle precision above 200 digits is not supported");
}

ExactReal pmf_exact(const BinomialParams& params, const OracleOptions& opts) {
  return evaluate(params, opts, Quantity::pmf);
}

ExactReal lower_tail_exact(const BinomialParams& params, const OracleOptions& opts) {
  return evaluate(params, opts, Quantity::lower);
}

ExactReal upper_tail_exact(const BinomialParams& params, const OracleOptions& opts) {
  return evaluate(params.reflected(), opts, Quantity::lower);
}

ExactReal partial_mean_exact(const BinomialParams& params, const OracleOptions& opts) {
  return evaluate(params, opts, Quantity::mean);
}

ExactReal tail_pmf_ratio_exact(const BinomialParams& params, const OracleOptions& opts) {
  return evaluate(params, opts, Quantity::ratio);
}

ExactReal upper_tail_pmf_ratio_exact(const BinomialParams& params, const OracleOptions& opts) {
  return evaluate(params.reflected(), opts, Quantity::ratio);
}

BinomialRow::BinomialRow(std::int64_t n, const Rational& p) : n_(n), p_(p) {
  if (n < 1) throw std::invalid_argument("n must be a positive integer");
  if (p <= 0 || p >= 1) throw std::invalid_argument("probability must lie in (0, 1)");
  auto [a, c, d] = split(p);
  terms_.resize(n + 1);
  prefix_.resize(n + 1);
  moment_.resize(n + 1);
  terms_[0] = power(c, n);
  for (std::int64_t j = 0; j < n; ++j) {
    BigInt m = terms_[j] * a;
    m *= static_cast<unsigned long>(n - j);
    mpz_divexact(m.backend().data(), m.backend().data(), BigInt(c * (j + 1)).backend().data());
    terms_[j + 1] = std::move(m);
  }
  prefix_[0] = terms_[0];
  moment_[0] = 0;
  for (std::int64_t j = 1; j <= n; ++j) {
    prefix_[j] = prefix_[j - 1] + terms_[j];
    moment_[j] = moment_[j - 1] + terms_[j] * j;
  }
  total_ = prefix_[n];
  using std::log;
  log_total_ = log(HighPrecision(total_));
}

HighPrecision BinomialRow::log_pmf(std::int64_t k) const {
  using std::log;
  return log(HighPrecision(terms_[k])) - log_total_;
}

HighPrecision BinomialRow::log_lower(std::int64_t k) const {
  using std::log;
  return log(HighPrecision(prefix_[k])) - log_total_;
}

HighPrecision BinomialRow::log_upper(std::int64_t k) const {
  using std::log;
  return log(HighPrecision(suffix(k))) - log_total_;
}

HighPrecision BinomialRow::lower_over_pmf(std::int64_t k) const {
  return HighPrecision(prefix_[k]) / HighPrecision(terms_[k]);
}

HighPrecision BinomialRow::upper_over_pmf(std::int64_t k) const {
  return HighPrecision(suffix(k)) / HighPrecision(terms_[k]);
}

}  // namespace bintail
