#include <bintail/report.hpp>

#include <catch_amalgamated.hpp>

using namespace bintail;

namespace {

const Field* find(const EvalReport& r, const std::string& name) {
  for (const auto& f : r.fields)
    if (f.name == name) return &f;
  return nullptr;
}

}  // namespace

TEST_CASE("eval report at (10, 3, 1/2) with exact tail") {
  EvalReport r = evaluate_point(BinomialParams(10, 3, Probability::ratio(1, 2)), Tail::lower, true);
  const Field* e = find(r, "exact");
  REQUIRE(e);
  CHECK(*e->value == 0.171875);
  CHECK(e->note == "11/64");
  const Field* down = find(r, "b_down");
  REQUIRE(down);
  CHECK(*down->ratio_to_exact < 1.0);
  const Field* up = find(r, "b_up");
  CHECK(*up->ratio_to_exact > 1.0);
  for (const char* name : {"L", "U", "chernoff", "reverse_type", "reverse_ash", "ferrante", "mckay_lo", "mckay_hi"})
    CHECK(find(r, name));
  CHECK(r.warning.empty());
}

TEST_CASE("degenerate endpoint") {
  EvalReport r = evaluate_point(BinomialParams(10, 0, Probability::ratio(1, 2)), Tail::lower, false);
  CHECK(*find(r, "L")->value == 1.0);
  CHECK(*find(r, "U")->value == 1.0);
  CHECK(find(r, "b_down")->note == "degenerate endpoint");
  CHECK_FALSE(find(r, "b_down")->value);
}

TEST_CASE("inapplicable bounds become notes") {
  EvalReport r = evaluate_point(BinomialParams(10, 7, Probability::ratio(1, 2)), Tail::lower, false);
  CHECK_FALSE(find(r, "L")->value);
  CHECK(find(r, "L")->note.find("k > pn") != std::string::npos);
}

TEST_CASE("upper tail mirrors the lower tail row") {
  EvalReport lo = evaluate_point(BinomialParams(10, 3, Probability::ratio(1, 2)), Tail::lower, true);
  EvalReport up = evaluate_point(BinomialParams(10, 7, Probability::ratio(1, 2)), Tail::upper, true);
  for (const char* name : {"L", "U", "b_down", "b_up", "chernoff", "exact"})
    CHECK(*find(up, name)->value == Catch::Approx(*find(lo, name)->value).epsilon(1e-14));
}

TEST_CASE("decimal p carries a warning") {
  EvalReport r = evaluate_point(BinomialParams(10, 3, Probability::parse("0.5")), Tail::lower, false);
  CHECK_FALSE(r.warning.empty());
  CHECK(eval_csv(r).find(",warning,") != std::string::npos);
  CHECK(eval_json(r).find("\"warning\"") != std::string::npos);
}

TEST_CASE("csv formatting") {
  EvalReport r = evaluate_point(BinomialParams(10, 3, Probability::ratio(1, 2)), Tail::lower, false);
  std::string csv = eval_csv(r);
  CHECK(csv.rfind("n,k,p,tail,field,value,log_value,ratio_to_exact,note\n", 0) == 0);
  CHECK(csv.find("10,3,1/2,lower,L,1.4364916731037085,") != std::string::npos);
  CHECK(csv.find('\r') == std::string::npos);

  Table t;
  t.columns = {"a", "b"};
  t.rows = {{"1", "x,y"}, {"2", "say \"hi\""}};
  CHECK(table_csv(t, {"grid: test"}) == "# grid: test\na,b\n1,\"x,y\"\n2,\"say \"\"hi\"\"\"\n");
  CHECK(table_json(t).find("\"schema\": 1") != std::string::npos);
}

TEST_CASE("sweep table rows follow the grid") {
  GridSpec g = GridSpec::standard(4);
  g.p_values = {Rational(1, 2)};
  Table t = sweep_table(g, Tail::lower);
  // k = 0..floor(n/2) for n = 1..4
  CHECK(t.rows.size() == 1 + 2 + 2 + 3);
  CHECK(t.rows.front()[0] == "1");
  CHECK(t.rows.back()[1] == "2");
  CHECK(t.columns.size() == t.rows.front().size());
}

TEST_CASE("compare table marks the crossover side") {
  Table t = compare_table(200, Probability::ratio(1, 2), "mckay");
  REQUIRE_FALSE(t.rows.empty());
  CHECK(t.rows.front()[9] == "below");
  CHECK(t.rows.back()[9] == "above");
  CHECK_THROWS_AS(compare_table(200, Probability::ratio(1, 2), "other"), std::invalid_argument);
}
