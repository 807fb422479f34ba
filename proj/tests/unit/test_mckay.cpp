#include <bintail/bounds.hpp>
#include <bintail/exact_oracle.hpp>
#include <bintail/mckay.hpp>

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace bintail;
using Catch::Approx;

namespace {

BinomialParams bp(std::int64_t n, std::int64_t k, long long a, long long b) {
  return BinomialParams(n, k, Probability::ratio(a, b));
}

}  // namespace

TEST_CASE("Mills-type function") {
  CHECK(mckay_Y(0) == Approx(std::sqrt(std::acos(-1.0) / 2)).epsilon(1e-15));
  CHECK(mckay_Y(2) * 6 == Approx(2.5282153757283268).epsilon(1e-15));
  CHECK_THROWS_AS(mckay_Y(-1), PreconditionError);
}

TEST_CASE("McKay ratio bracket at (100, 60, 1/2)") {
  BinomialParams p = bp(100, 60, 1, 2);
  McKayContext c = mckay_context(p);
  CHECK(c.sigma == Approx(5.0));
  CHECK(c.x == Approx(2.0));
  CHECK(c.E == Approx(0.1));
  Interval r = mckay_ratio_bounds(p);
  CHECK(r.lo == Approx(2.5282153757283268).epsilon(1e-14));
  CHECK(r.hi == Approx(2.7941101078866434).epsilon(1e-14));
  double exact = upper_tail_pmf_ratio_exact(p).to_double();
  CHECK(exact == Approx(2.6230465180804383).epsilon(1e-15));
  CHECK(r.lo <= exact);
  CHECK(exact <= r.hi);
}

TEST_CASE("McKay tail brackets contain the exact tail on both sides") {
  BinomialParams up = bp(100, 60, 1, 2);
  Interval u = mckay_tail_bounds(up, Tail::upper);
  double eu = upper_tail_exact(up).to_double();
  CHECK(u.lo <= eu);
  CHECK(eu <= u.hi);
  BinomialParams lo = bp(100, 40, 1, 2);
  Interval l = mckay_tail_bounds(lo, Tail::lower);
  double el = lower_tail_exact(lo).to_double();
  CHECK(l.lo <= el);
  CHECK(el <= l.hi);
  CHECK(l.lo == Approx(u.lo).epsilon(1e-13));
}

TEST_CASE("E stays below 3/2 and peaks at small n") {
  CHECK(mckay_E(bp(10, 3, 1, 2)) == Approx(0.39633272976060110).epsilon(1e-14));
  CHECK(mckay_E(bp(5, 1, 1, 20)) == Approx(1.2858731732479835).epsilon(1e-14));
  CHECK_THROWS_AS(mckay_E(bp(10, 5, 1, 2)), PreconditionError);
}

TEST_CASE("McKay preconditions") {
  CHECK_THROWS_AS(mckay_ratio_bounds(bp(10, 5, 1, 2)), PreconditionError);
  CHECK_THROWS_AS(mckay_tail_bounds(bp(10, 10, 1, 2), Tail::upper), PreconditionError);
  CHECK_THROWS_AS(mckay_tail_bounds(bp(10, 6, 1, 2), Tail::lower), PreconditionError);
}

TEST_CASE("crossover point") {
  Crossover c = crossover_f_star(0.5);
  CHECK(c.f_star == Approx(0.64038820320220757).epsilon(1e-15));
  // At f*, the two asymptotic width coefficients coincide.
  CHECK(c.gamma1(c.f_star) == Approx(c.gamma2(c.f_star)).epsilon(1e-12));
  CHECK_THROWS_AS(crossover_f_star(1.0), std::invalid_argument);
}
