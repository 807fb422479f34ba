#include <bintail/params.hpp>
#include <bintail/validator.hpp>

#include "../../src/validator_engine.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace bintail;

namespace {

GridSpec small_grid(std::int64_t n_max = 40) {
  GridSpec g = GridSpec::standard(n_max);
  return g;
}

ValidatorOptions threads(unsigned t) {
  ValidatorOptions o;
  o.threads = t;
  return o;
}

}  // namespace

TEST_CASE("standard grid") {
  GridSpec g = GridSpec::standard(300);
  CHECK(g.n_values.size() == 300);
  CHECK(g.p_values.size() == 19);
  CHECK(g.p_values.front() == Rational(1, 20));
  CHECK(g.p_values.back() == Rational(19, 20));
  CHECK(g.n_max() == 300);
  CHECK(g.describe().find("n=1..300") != std::string::npos);
}

TEST_CASE("every theorem suite passes on a small grid") {
  for (const auto& id : suite_ids()) {
    if (id == "convergence" || id == "conjecture") continue;
    GridSpec g = small_grid();
    if (id == "gaussian") g.x_step = Rational(1, 10);
    CheckSummary s = run_suite(id, g, threads(2));
    INFO(id << ": " << summary_json(s));
    CHECK(s.violation_count == 0);
    CHECK(s.passed());
    CHECK(s.points_checked > 0);
  }
}

TEST_CASE("unknown suite is rejected") { CHECK_THROWS_AS(run_suite("nope", small_grid()), std::invalid_argument); }

TEST_CASE("invalid grids are rejected") {
  GridSpec g = small_grid();
  g.p_values = {Rational(3, 2)};
  CHECK_THROWS_AS(run_suite("theorem1", g), std::invalid_argument);
  g = small_grid();
  g.n_values.clear();
  CHECK_THROWS_AS(run_suite("theorem1", g), std::invalid_argument);
}

TEST_CASE("results do not depend on thread count") {
  GridSpec g = small_grid(30);
  for (const char* id : {"theorem1", "theorem2", "mckay", "conjecture"}) {
    std::string one = summary_json(run_suite(id, g, threads(1)));
    std::string four = summary_json(run_suite(id, g, threads(4)));
    CHECK(one == four);
  }
}

TEST_CASE("tail-bound suite reports the max ratio below 89/44") {
  CheckSummary s = run_suite("theorem2", small_grid(60));
  bool found = false;
  for (const auto& m : s.metrics)
    if (m.name == "max Bup/Bdown") {
      found = true;
      CHECK(m.value < 89.0 / 44.0);
      CHECK(m.value > 1.0);
    }
  CHECK(found);
}

TEST_CASE("the checker records violations and escalations") {
  ValidatorOptions o;
  detail::Checker c("synthetic", o);
  GridPoint pt;
  pt.n = 1;
  // 1 < 1 + 1e-12 passes only after escalation; 2 < 1 fails outright.
  c.chain<3>(pt, "chain", {"a", "b", "c"}, {detail::Rel::less, detail::Rel::less}, detail::Domain::linear,
             [](auto tag) {
               using R = typename decltype(tag)::type;
               return std::array<R, 3>{R(1), R(1) + R(1e-12), R(2)};
             });
  c.chain<2>(pt, "bad", {"x", "y"}, {detail::Rel::less}, detail::Domain::linear, [](auto tag) {
    using R = typename decltype(tag)::type;
    return std::array<R, 2>{R(2), R(1)};
  });
  c.exact_relation(pt, "exact", "u", Rational(1, 3), detail::Rel::equal, "v", Rational(2, 6));
  c.exact_relation(pt, "exact", "u", Rational(1, 3), detail::Rel::less, "v", Rational(1, 3));
  CheckSummary s = c.take();
  CHECK(s.escalations == 2);
  CHECK(s.violation_count == 2);
  REQUIRE(s.violations.size() == 2);
  CHECK(s.violations[0].relation.find("x < y") != std::string::npos);
  CHECK(s.violations[0].precision_escalated);
  CHECK_FALSE(s.passed());
}

TEST_CASE("merge keeps counts exact and caps reports") {
  CheckSummary a, b;
  a.violation_count = 3;
  a.violations.resize(3);
  b.violation_count = 4;
  b.violations.resize(4);
  a.points_checked = 10;
  b.points_checked = 5;
  a.merge(b, 5);
  CHECK(a.violation_count == 7);
  CHECK(a.violations.size() == 5);
  CHECK(a.points_checked == 15);
}

TEST_CASE("summary json and violations csv") {
  CheckSummary s = run_suite("phi_band", small_grid(10));
  std::string j = summary_json(s);
  CHECK(j.find("\"schema\": 1") != std::string::npos);
  CHECK(j.find("\"violation_count\": 0") != std::string::npos);
  CHECK(violations_csv(s) == "suite,n,k,p,lhs,rhs,margin,relation,x\n");
  CHECK(rational_str(Rational(3, 20)) == "3/20");
}

TEST_CASE("convergence tracks") {
  CheckSummary ld = convergence_suite(Rational(3, 10), Rational(1, 2), {10, 100, 1000});
  CHECK(ld.passed());
  REQUIRE(ld.tables.size() == 1);
  CHECK(ld.tables[0].rows.size() == 3);
  CHECK(ld.tables[0].rows[0][2] == "1.2375498790930402");
  CHECK_THROWS_AS(convergence_suite(Rational(3, 5), Rational(1, 2), {10}), PreconditionError);
  CHECK_THROWS_AS(convergence_suite(Rational(3, 10), Rational(1, 2), {100, 10}), std::invalid_argument);

  ConvergenceSpec clt;
  clt.track = Track::clt;
  clt.schedule = {100, 1000, 10000};
  clt.final_gap = 0.02;
  CheckSummary c = convergence_suite(clt);
  CHECK(c.passed());
  CHECK(c.tables[0].rows[0][2] == "0.17511271403436106");
}
