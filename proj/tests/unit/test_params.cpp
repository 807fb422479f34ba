#include <bintail/params.hpp>

#include <catch_amalgamated.hpp>

using namespace bintail;

TEST_CASE("probability parses rationals exactly") {
  Probability p = Probability::parse("3/20");
  REQUIRE(p.is_rational());
  CHECK(p.exact() == Rational(3, 20));
  CHECK(p.value() == Catch::Approx(0.15));
  CHECK(p.str() == "3/20");
  CHECK(p.complement().exact() == Rational(17, 20));
  CHECK(Probability::parse(" 6/40 ").exact() == Rational(3, 20));
}

TEST_CASE("decimal probabilities stay binary64") {
  Probability p = Probability::parse("0.25");
  CHECK_FALSE(p.is_rational());
  CHECK(p.value() == 0.25);
  CHECK(p.as_rational() == Rational(1, 4));
  CHECK_THROWS_AS(p.exact(), std::logic_error);
}

TEST_CASE("probability rejects malformed and out-of-range input") {
  for (const char* bad : {"0", "1", "3/2", "-1/2", "1/0", "abc", "", "0.5x", "1.5", "a/b"})
    CHECK_THROWS_AS(Probability::parse(bad), std::invalid_argument);
  CHECK_THROWS_AS(Probability::binary64(0.0), std::invalid_argument);
  CHECK_THROWS_AS(Probability::rational(Rational(1)), std::invalid_argument);
}

TEST_CASE("binomial params validate n and k") {
  CHECK_THROWS_AS(BinomialParams(0, 0, Probability::ratio(1, 2)), std::invalid_argument);
  CHECK_THROWS_AS(BinomialParams(5, 6, Probability::ratio(1, 2)), std::invalid_argument);
  CHECK_THROWS_AS(BinomialParams(5, -1, Probability::ratio(1, 2)), std::invalid_argument);
  CHECK_NOTHROW(BinomialParams(5, 5, Probability::ratio(1, 2)));
}

TEST_CASE("k is compared to the mean exactly") {
  CHECK(BinomialParams(10, 5, Probability::ratio(1, 2)).compare_k_to_mean() == 0);
  CHECK(BinomialParams(10, 4, Probability::ratio(1, 2)).compare_k_to_mean() < 0);
  CHECK(BinomialParams(10, 6, Probability::ratio(1, 2)).compare_k_to_mean() > 0);
  // 3/10 * 10 is exactly 3 as a rational but not in binary64 arithmetic on 0.3.
  CHECK(BinomialParams(10, 3, Probability::ratio(3, 10)).compare_k_to_mean() == 0);
}

TEST_CASE("reflection swaps k and p") {
  BinomialParams r = BinomialParams(10, 3, Probability::ratio(1, 5)).reflected();
  CHECK(r.n == 10);
  CHECK(r.k == 7);
  CHECK(r.p.exact() == Rational(4, 5));
}
