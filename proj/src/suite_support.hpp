#pragma once

#include "validator_engine.hpp"

#include <bintail/exact_oracle.hpp>
#include <bintail/formulas.hpp>

#include <algorithm>
#include <stdexcept>

namespace bintail::detail {

template <class R>
R cv(const HighPrecision& v) {
  if constexpr (is_binary64<R>)
    return v.convert_to<double>();
  else
    return v;
}

inline void validate_grid(const GridSpec& g) {
  if (g.n_values.empty() || g.p_values.empty()) throw std::invalid_argument("grid needs n and p values");
  for (auto n : g.n_values)
    if (n < 1) throw std::invalid_argument("grid n values must be positive");
  for (const auto& p : g.p_values)
    if (!(p > 0 && p < 1)) throw std::invalid_argument("grid p values must lie in (0, 1)");
}

inline std::vector<std::int64_t> sorted_n(const GridSpec& g) {
  std::vector<std::int64_t> v = g.n_values;
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline std::vector<Rational> sorted_p(const GridSpec& g) {
  std::vector<Rational> v = g.p_values;
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// floor(n * r) for r >= 0.
inline std::int64_t floor_mul(std::int64_t n, const Rational& r) {
  BigInt num = numerator(r) * n;
  BigInt den = denominator(r);
  return BigInt(num / den).convert_to<std::int64_t>();
}

inline int sign_k_minus_pn(std::int64_t k, std::int64_t n, const Rational& p) {
  Rational d = Rational(k) - Rational(n) * p;
  return d.sign();
}

struct KRange {
  std::int64_t lo, hi;
};

// The suite's admissible k range intersected with the grid's k rule.
inline KRange k_range(KRule rule, std::int64_t n, const Rational& p, KRange admissible) {
  std::int64_t fl = floor_mul(n, p);
  std::int64_t ce = sign_k_minus_pn(fl, n, p) == 0 ? fl : fl + 1;
  KRange r = admissible;
  if (rule == KRule::lower_tail_k) r.hi = std::min(r.hi, fl);
  if (rule == KRule::upper_tail_k) r.lo = std::max(r.lo, ce);
  return r;
}

// One (n, p) row: the exact oracle row plus p, q in both working types.
struct RowCtx {
  RowCtx(std::int64_t n_, const Rational& p_)
      : n(n_), p(p_), q(1 - p_), row(n_, p_), pH(p), qH(q), pd(pH.convert_to<double>()),
        qd(qH.convert_to<double>()), floor_pn(floor_mul(n_, p_)) {}

  std::int64_t n;
  Rational p, q;
  BinomialRow row;
  HighPrecision pH, qH;
  double pd, qd;
  std::int64_t floor_pn;

  template <class R>
  R pr() const {
    if constexpr (is_binary64<R>) return pd; else return pH;
  }
  template <class R>
  R qr() const {
    if constexpr (is_binary64<R>) return qd; else return qH;
  }

  int cmp(std::int64_t k) const { return sign_k_minus_pn(k, n, p); }
  std::int64_t ceil_pn() const { return cmp(floor_pn) == 0 ? floor_pn : floor_pn + 1; }
};

// Runs fn(checker, n, p_index, p) over the n x p product in parallel.
template <class Fn>
CheckSummary over_np(const std::string& suite, const GridSpec& grid, const ValidatorOptions& opts, Fn fn) {
  validate_grid(grid);
  const auto ns = sorted_n(grid);
  const auto ps = sorted_p(grid);
  auto parts = parallel_map(ns.size() * ps.size(), thread_count(opts), [&](std::size_t i) {
    Checker c(suite, opts);
    fn(c, ns[i / ps.size()], i % ps.size(), ps[i % ps.size()]);
    return c.take();
  });
  return merge_in_order(suite, parts, opts);
}

}  // namespace bintail::detail
