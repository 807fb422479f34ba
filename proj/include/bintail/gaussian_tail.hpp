#pragma once

#include <bintail/bounds.hpp>

namespace bintail {

struct GaussianBoundPair {
  double ell;
  double upsilon;
  double x;
};

GaussianBoundPair gauss_bound_pair(double x);
// (l(x) e^{-x^2/2}, u(x) e^{-x^2/2}), a bracket of Phi(-x).
Interval gaussian_tail_bounds(double x);
// sqrt(pi/2) l(x) e^{-x^2/2}, the sharper upper bound on Phi(-x).
double gaussian_tail_sharp_upper(double x);

}  // namespace bintail
