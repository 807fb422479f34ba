#include <bintail/exact_oracle.hpp>
#include <bintail/formulas.hpp>
#include <bintail/mckay.hpp>

#include <cmath>

namespace bintail {

namespace fm = formula;

namespace {

struct PQ {
  double p, q;
};

PQ split(const BinomialParams& params) { return {params.p.value(), params.p.complement().value()}; }

}  // namespace

ExactReal mckay_Y_exact(double x, double tol) {
  if (!(x >= 0)) throw PreconditionError("mckay_Y requires x >= 0");
  return mills_ratio(HighPrecision(x), HighPrecision(tol));
}

double mckay_Y(double x, double tol) { return mckay_Y_exact(x, tol).to_double(); }

double mckay_E(const BinomialParams& params) {
  if (params.compare_k_to_mean() == 0) throw PreconditionError("mckay_E: pole at k = pn");
  auto [p, q] = split(params);
  return fm::mckay_E<double>(params.n, params.k, p, q);
}

McKayContext mckay_context(const BinomialParams& params) {
  auto [p, q] = split(params);
  const double n = static_cast<double>(params.n), k = static_cast<double>(params.k);
  McKayContext c{};
  c.sigma = std::sqrt(n * p * q);
  c.x = fm::mckay_x(n, k, p, q);
  c.Y = mckay_Y(c.x);
  c.E = params.compare_k_to_mean() == 0 ? std::nan("") : fm::mckay_E(n, k, p, q);
  return c;
}

Interval mckay_ratio_bounds(const BinomialParams& params) {
  if (params.compare_k_to_mean() <= 0)
    throw PreconditionError("theorem precondition violated: requires pn < k <= n");
  auto [p, q] = split(params);
  const double n = static_cast<double>(params.n), k = static_cast<double>(params.k);
  double lo = k * std::sqrt(q / (p * n)) * mckay_Y(fm::mckay_x(n, k, p, q));
  return {lo, lo * std::exp(fm::mckay_E(n, k, p, q))};
}

Interval mckay_tail_log_bounds(const BinomialParams& params, Tail tail) {
  const int side = params.compare_k_to_mean();
  if (tail == Tail::upper && !(side > 0 && params.k <= params.n - 1))
    throw PreconditionError("theorem precondition violated: requires pn < k <= n-1");
  if (tail == Tail::lower && !(side < 0 && params.k >= 1))
    throw PreconditionError("theorem precondition violated: requires 1 <= k < pn");
  auto [p, q] = split(params);
  const double n = static_cast<double>(params.n), k = static_cast<double>(params.k);
  const double m = n - k;
  double pre = 0.5 * std::log(q * k / (p * m));
  if (tail == Tail::lower) pre = -pre;
  const double x = fm::mckay_x(n, k, p, q);
  const double nd = fm::scaled_entropy(n, k, p, q);
  double lo = pre + fm::log_varphi_minus(n, k) + std::log(fm::ell_scaled(x)) - nd;
  double hi = pre + fm::log_varphi_plus(n, k) + std::log(fm::upsilon_scaled(x)) + fm::mckay_E(n, k, p, q) - nd;
  return {lo, hi};
}

Interval mckay_tail_bounds(const BinomialParams& params, Tail tail) {
  auto l = mckay_tail_log_bounds(params, tail);
  return {std::exp(l.lo), std::exp(l.hi)};
}

Crossover crossover_f_star(double p) {
  if (!(p > 0 && p < 1)) throw std::invalid_argument("probability must lie in (0, 1)");
  double q = 1 - p;
  return {p, p * (q + std::sqrt(4 + q * q)) / 2};
}

}  // namespace bintail
