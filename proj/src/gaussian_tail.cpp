#include <bintail/formulas.hpp>
#include <bintail/gaussian_tail.hpp>

#include <cmath>

namespace bintail {

namespace {

void check_x(double x) {
  if (!(x >= 0)) throw PreconditionError("Gaussian tail bounds require x >= 0");
}

}  // namespace

GaussianBoundPair gauss_bound_pair(double x) {
  check_x(x);
  const double s = sqrt_2pi_v<double>();
  return {formula::ell_scaled(x) / s, formula::upsilon_scaled(x) / s, x};
}

Interval gaussian_tail_bounds(double x) {
  auto g = gauss_bound_pair(x);
  double w = std::exp(-x * x / 2);
  return {g.ell * w, g.upsilon * w};
}

double gaussian_tail_sharp_upper(double x) {
  check_x(x);
  // sqrt(pi/2) / sqrt(2 pi) = 1/2
  return formula::ell_scaled(x) / 2 * std::exp(-x * x / 2);
}

}  // namespace bintail
