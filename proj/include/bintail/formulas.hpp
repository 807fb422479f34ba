#pragma once

// Closed-form kernels shared by the binary64 API and the high-precision
// recheck path. No precondition checks here; callers validate.

#include <bintail/precision.hpp>

#include <cmath>
#include <cstdint>

namespace bintail::formula {

template <class R>
R xlogy_ratio(const R& x, const R& y) {
  using std::log;
  return x == 0 ? R(0) : x * log(x / y);
}

// D(f||p) with q = 1 - p supplied by the caller.
template <class R>
R relative_entropy(const R& f, const R& p, const R& q) {
  using std::log1p;
  if constexpr (is_binary64<R>) {
    R g = 1 - f;
    R a = f == 0 ? 0.0 : f * log1p((f - p) / p);
    R b = g == 0 ? 0.0 : g * log1p((p - f) / q);
    R d = a + b;
    return d < 0 ? 0.0 : d;
  } else {
    return xlogy_ratio(f, p) + xlogy_ratio(R(1 - f), q);
  }
}

// n * D(k/n || p) written without forming k/n.
template <class R>
R scaled_entropy(const R& n, const R& k, const R& p, const R& q) {
  if constexpr (is_binary64<R>) {
    return n * relative_entropy(k / n, p, q);
  } else {
    R m = n - k;
    return xlogy_ratio(k, R(n * p)) + xlogy_ratio(m, R(n * q));
  }
}

template <class R>
R odds_ratio(const R& f, const R& p, const R& q) {
  return f * q / ((1 - f) * p);
}

template <class R>
R lower_L(const R& n, const R& k, const R& p, const R& q) {
  using std::sqrt;
  R s = p * n - k + 1;
  R disc = sqrt(s * s + 4 * q * k);
  if (s > 0) return 1 + 2 * q * k / (disc + s);
  return (k + 1 - p * n + disc) / 2;
}

template <class R>
R kappa1(const R& n, const R& p, const R& q) {
  using std::sqrt;
  return p * (n + 1) - sqrt(p * q * (n + 1));
}

template <class R>
R V(const R& n, const R& k, const R& p, const R& a) {
  return a + p * (n - k + a + 1) / (p * n + p - k + a);
}

template <class R>
struct UpperU {
  R value;
  std::int64_t branch_a;
  bool zero_branch;
};

template <class R>
UpperU<R> upper_U(const R& n, const R& k, const R& p, const R& q) {
  using std::ceil;
  using std::floor;
  R k1 = kappa1(n, p, q);
  if (k < k1) return {V(n, k, p, R(0)), 0, true};
  R at = k - k1;
  R lo = floor(at), hi = ceil(at);
  R v_lo = V(n, k, p, lo), v_hi = V(n, k, p, hi);
  if (v_hi < v_lo) return {v_hi, static_cast<std::int64_t>(hi), false};
  return {v_lo, static_cast<std::int64_t>(lo), false};
}

// (1-f) p / (p - f), the common limit of L and U along k = fn.
template <class R>
R ratio_limit(const R& f, const R& p) {
  return (1 - f) * p / (p - f);
}

// r(x) = ln Gamma(x+1) - [(x+1/2) ln x - x + ln sqrt(2 pi)], x > 0.
template <class R>
R stirling_remainder(const R& x) {
  using std::lgamma;
  using std::log;
  if constexpr (is_binary64<R>) {
    if (x >= 20) {
      R y = 1 / x, y2 = y * y;
      return y * (1.0 / 12 - y2 * (1.0 / 360 - y2 * (1.0 / 1260 - y2 * (1.0 / 1680 - y2 / 1188))));
    }
  }
  return lgamma(x + 1) - ((x + R(0.5)) * log(x) - x + ln_sqrt_2pi_v<R>());
}

// ln varphi(n,k) for 0 < k < n.
template <class R>
R log_varphi(const R& n, const R& k) {
  return stirling_remainder(n) - stirling_remainder(k) - stirling_remainder(R(n - k)) -
         ln_sqrt_2pi_v<R>();
}

template <class R>
R log_varphi_minus(const R& n, const R& k) {
  R m = n - k;
  return 1 / (12 * n) - 1 / (12 * k) - 1 / (12 * m) - ln_sqrt_2pi_v<R>();
}

template <class R>
R log_varphi_plus(const R& n, const R& k) {
  R m = n - k;
  return 1 / (12 * n + 1) - 1 / (12 * k + 1) - 1 / (12 * m + 1) - ln_sqrt_2pi_v<R>();
}

// ln phi(n,k) for 0 <= k <= n; phi = 1 at both endpoints.
template <class R>
R log_phi(const R& n, const R& k) {
  using std::log;
  if (k == 0 || k == n) return R(0);
  R m = n - k;
  return log_varphi(n, k) + (log(n) - log(k) - log(m)) / 2;
}

// Logs of L~-, L~, U~, U~+ (bounds on sqrt(n) B e^{nD}).
template <class R>
struct TildeLogs {
  R l_minus, l, u, u_plus;
};

template <class R>
TildeLogs<R> tilde_logs(const R& n, const R& k, const R& L, const R& U) {
  using std::log;
  R m = n - k;
  R ln_n = log(n), half_km = (log(k) + log(m)) / 2;
  R lphi = log_phi(n, k);
  TildeLogs<R> t;
  t.l_minus = ln_n + log_varphi_minus(n, k) + log(L) - half_km;
  t.l = ln_n / 2 + lphi + log(L);
  t.u = ln_n / 2 + lphi + log(U);
  t.u_plus = ln_n + log_varphi_plus(n, k) + log(U) - half_km;
  return t;
}

// Gaussian side: scaled bounds l~(x) = sqrt(2 pi) l(x) and u~(x) = sqrt(2 pi) u(x).
template <class R>
R ell_scaled(const R& x) {
  using std::sqrt;
  return 2 / (sqrt(4 + x * x) + x);
}

template <class R>
R upsilon_scaled(const R& x) {
  return x <= 1 ? R(2 - x) : R(1 / x);
}

// McKay correction exponent E and offset x for the bracket at k != pn.
template <class R>
R mckay_E(const R& n, const R& k, const R& p, const R& q) {
  using std::abs;
  using std::sqrt;
  R a = sqrt(pi_v<R>() / (8 * n * p * q));
  R b = 1 / abs(k - p * n);
  return a < b ? a : b;
}

template <class R>
R mckay_x(const R& n, const R& k, const R& p, const R& q) {
  using std::abs;
  using std::sqrt;
  return abs(k - p * n) / sqrt(n * p * q);
}

}  // namespace bintail::formula
