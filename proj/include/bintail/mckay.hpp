#pragma once

#include <bintail/bounds.hpp>
#include <bintail/exact_real.hpp>

namespace bintail {

enum class Tail { lower, upper };

struct McKayContext {
  double sigma;
  double x;
  double Y;
  double E;
};

// Y(x) = e^{x^2/2} sqrt(2 pi) Phi(-x) with relative error at most tol.
double mckay_Y(double x, double tol = 1e-30);
ExactReal mckay_Y_exact(double x, double tol = 1e-30);
double mckay_E(const BinomialParams& params);
McKayContext mckay_context(const BinomialParams& params);
// Bracket of upper-tail B/b for pn < k <= n.
Interval mckay_ratio_bounds(const BinomialParams& params);
// Integral-free tail bracket; upper: pn < k <= n-1, lower: 1 <= k < pn.
Interval mckay_tail_bounds(const BinomialParams& params, Tail tail);
// Same bracket in natural-log form, usable where the linear values underflow.
Interval mckay_tail_log_bounds(const BinomialParams& params, Tail tail);

struct Crossover {
  double p;
  double f_star;
  double gamma1(double f) const { return 1 / (f - p); }
  double gamma2(double f) const { return (1 - f) * p * p / (f * (f - p) * (f - p)); }
};

Crossover crossover_f_star(double p);

}  // namespace bintail
