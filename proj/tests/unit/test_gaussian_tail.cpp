#include <bintail/exact_oracle.hpp>
#include <bintail/gaussian_tail.hpp>

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace bintail;
using Catch::Approx;

TEST_CASE("bound pair at x = 0, 1, 3") {
  GaussianBoundPair g0 = gauss_bound_pair(0);
  CHECK(g0.ell == Approx(0.39894228040143268).epsilon(1e-15));
  CHECK(g0.upsilon == Approx(0.79788456080286536).epsilon(1e-15));
  GaussianBoundPair g1 = gauss_bound_pair(1);
  CHECK(g1.ell == Approx(0.24655988883747644).epsilon(1e-15));
  CHECK(g1.upsilon == Approx(0.39894228040143268).epsilon(1e-15));
  GaussianBoundPair g3 = gauss_bound_pair(3);
  CHECK(g3.ell == Approx(0.12079000336680001).epsilon(1e-15));
  CHECK(g3.upsilon == Approx(0.13298076013381089).epsilon(1e-15));
}

TEST_CASE("bracket contains the Gaussian tail") {
  for (double x : {0.0, 0.01, 0.5, 1.0, 2.0, 3.0, 5.0, 8.0, 10.0}) {
    Interval b = gaussian_tail_bounds(x);
    double t = gaussian_upper_tail(x, 1e-15 * gaussian_tail_bounds(x).lo).to_double();
    CHECK(b.lo <= t);
    CHECK(t <= b.hi);
    CHECK(t <= gaussian_tail_sharp_upper(x));
  }
  CHECK(gaussian_tail_bounds(3).lo == Approx(0.0013418557292560578).epsilon(1e-14));
}

TEST_CASE("sharp upper bound is tight at zero") {
  CHECK(gaussian_tail_sharp_upper(0) == Approx(0.5).epsilon(1e-15));
}

TEST_CASE("negative x is rejected") {
  CHECK_THROWS_AS(gauss_bound_pair(-0.5), PreconditionError);
  CHECK_THROWS_AS(gaussian_tail_bounds(-1), PreconditionError);
}
