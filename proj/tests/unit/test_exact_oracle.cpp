#include <bintail/exact_oracle.hpp>

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace bintail;

namespace {

BinomialParams bp(std::int64_t n, std::int64_t k, long long a, long long b) {
  return BinomialParams(n, k, Probability::ratio(a, b));
}

}  // namespace

TEST_CASE("exact tails at small points") {
  ExactReal lo = lower_tail_exact(bp(10, 3, 1, 2));
  REQUIRE(lo.is_rational());
  CHECK(lo.value() == Rational(11, 64));
  CHECK(upper_tail_exact(bp(10, 7, 1, 2)).value() == Rational(11, 64));
  CHECK(pmf_exact(bp(10, 3, 1, 2)).value() == Rational(120, 1024));
  CHECK(lower_tail_exact(bp(10, 10, 1, 3)).value() == 1);
  CHECK(upper_tail_exact(bp(10, 0, 1, 3)).value() == 1);
  CHECK(lower_tail_exact(bp(4, 0, 1, 3)).value() == Rational(16, 81));
}

TEST_CASE("tail to pmf ratio and partial mean") {
  CHECK(tail_pmf_ratio_exact(bp(10, 3, 1, 2)).value() == Rational(176, 120));
  CHECK(upper_tail_pmf_ratio_exact(bp(10, 7, 1, 2)).value() == Rational(176, 120));
  // (0*1 + 1*10 + 2*45 + 3*120) / 176
  CHECK(partial_mean_exact(bp(10, 3, 1, 2)).value() == Rational(460, 176));
}

TEST_CASE("row quantities agree with the single-point oracle") {
  BinomialRow row(25, Rational(7, 20));
  for (std::int64_t k = 0; k <= 25; ++k) {
    BinomialParams p = bp(25, k, 7, 20);
    CHECK(row.lower(k) == lower_tail_exact(p).value());
    CHECK(row.upper(k) == upper_tail_exact(p).value());
    CHECK(row.lower(k) + row.upper(k) - row.pmf(k) == 1);
    CHECK(row.partial_mean(k) == partial_mean_exact(p).value());
  }
  CHECK(row.log_lower(4).convert_to<double>() == Catch::Approx(std::log(row.lower(4).convert_to<double>())));
}

TEST_CASE("decimal backend tracks the rational oracle") {
  OracleOptions decimal;
  decimal.rational_n_limit = 0;
  ExactReal r = lower_tail_exact(bp(200, 37, 1, 5));
  ExactReal d = lower_tail_exact(bp(200, 37, 1, 5), decimal);
  CHECK_FALSE(d.is_rational());
  CHECK(d.contains(r.value()));
  CHECK(std::abs(d.to_double() / r.to_double() - 1) < 1e-14);
}

TEST_CASE("large n routes to the decimal backend") {
  BinomialParams p(100000, 49000, Probability::ratio(1, 2));
  ExactReal d = lower_tail_exact(p);
  CHECK_FALSE(d.is_rational());
  CHECK(d.log_value().convert_to<double>() == Catch::Approx(-22.767836095797709).epsilon(1e-14));
  CHECK(d.to_double() == Catch::Approx(1.2943580191734489e-10).epsilon(1e-13));
}

TEST_CASE("decimal p is accepted by the oracle") {
  BinomialParams p(10, 3, Probability::parse("0.5"));
  ExactReal d = lower_tail_exact(p);
  CHECK(d.to_double() == Catch::Approx(0.171875).epsilon(1e-15));
}

TEST_CASE("Ramanujan theta") {
  RamanujanSolution s1 = ramanujan_theta_solution(1);
  CHECK(s1.theta.to_double() == Catch::Approx(0.35914091422952262).epsilon(1e-15));
  CHECK(s1.residual <= s1.residual_bound);
  CHECK(ramanujan_theta(2).to_double() == Catch::Approx(0.34726402473266256).epsilon(1e-15));
  CHECK(ramanujan_theta(500).to_double() == Catch::Approx(0.33339258129007608).epsilon(1e-14));
  CHECK(certainly_less(ramanujan_theta(3), ramanujan_theta(2)));
  CHECK_THROWS_AS(ramanujan_theta(0), std::invalid_argument);
}

TEST_CASE("median deficit zeta") {
  CHECK(median_deficit_zeta(2, 1).value() == Rational(1, 2));
  CHECK(median_deficit_zeta(10, 5).value() == Rational(1, 2));
  CHECK_THROWS_AS(median_deficit_zeta(10, 0), PreconditionError);
  CHECK_THROWS_AS(median_deficit_zeta(10, 10), PreconditionError);
}

TEST_CASE("Gaussian tail oracle") {
  ExactReal g = gaussian_upper_tail(1.0, 1e-20);
  CHECK(g.to_double() == Catch::Approx(0.15865525393145705).epsilon(1e-15));
  CHECK(g.error() <= Rational(1, 100000000) * Rational(1, 1000000000000LL));
  ExactReal g0 = gaussian_upper_tail(0.0, 1e-20);
  CHECK(g0.contains(Rational(1, 2)));
  ExactReal m0 = mills_ratio(HighPrecision(0), HighPrecision("1e-40"));
  CHECK(m0.to_double() == Catch::Approx(std::sqrt(std::acos(-1.0) / 2)).epsilon(1e-15));
  // Mills ratio stays relatively accurate far in the tail: x R(x) -> 1.
  ExactReal m = mills_ratio(HighPrecision(40), HighPrecision("1e-40"));
  CHECK(40 * m.to_double() == Catch::Approx(0.99937616822882285).epsilon(1e-15));
  CHECK_THROWS_AS(gaussian_upper_tail(-1.0, 1e-12), PreconditionError);
}
