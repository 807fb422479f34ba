#include <bintail/exact_oracle.hpp>
#include <bintail/report.hpp>
#include <bintail/validator.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

using namespace bintail;

namespace {

constexpr int kOk = 0;
constexpr int kViolations = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
  if (!out) throw UsageError("cannot write " + path);
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<std::int64_t> parse_ints(const std::string& s) {
  std::vector<std::int64_t> out;
  for (const auto& item : split(s)) {
    std::size_t pos = 0;
    long long v = std::stoll(item, &pos);
    if (pos != item.size()) throw UsageError("not an integer: " + item);
    out.push_back(v);
  }
  return out;
}

// "a/b", an integer, or a plain decimal such as 0.05, read exactly.
Rational parse_rational(const std::string& text) {
  static const std::regex form(R"(\s*(-?)(\d+)(?:/(\d+)|\.(\d*))?\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, form)) throw UsageError("not a rational number: " + text);
  Rational r;
  if (m[3].matched) {
    BigInt den(m[3].str());
    if (den == 0) throw UsageError("zero denominator: " + text);
    r = Rational(BigInt(m[2].str()), den);
  } else {
    std::string frac = m[4].matched ? m[4].str() : "";
    BigInt den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    r = Rational(BigInt(m[2].str() + frac), den);
  }
  return m[1].length() ? Rational(-r) : r;
}

Rational parse_probability(const std::string& text) { return Probability::rational(parse_rational(text)).exact(); }

struct GridArgs {
  std::int64_t n_max = 300;
  std::string n_list;
  std::string p_list;
  std::string k_rule = "default";
  std::string x_max = "10";
  std::string x_step = "1/100";
};

void add_grid_options(CLI::App* app, GridArgs& g) {
  app->add_option("--n-max", g.n_max, "Largest n (grid n = 1..n-max)")->check(CLI::PositiveNumber);
  app->add_option("--n", g.n_list, "Comma-separated n values (overrides --n-max)");
  app->add_option("--p-list", g.p_list, "Comma-separated p values such as 1/20,1/10 (default j/20)");
  app->add_option("--k-rule", g.k_rule, "default | all | lower | upper")
      ->check(CLI::IsMember({"default", "all", "lower", "upper"}));
  app->add_option("--x-max", g.x_max, "Gaussian suite: largest x");
  app->add_option("--x-step", g.x_step, "Gaussian suite: x step");
}

GridSpec build_grid(const GridArgs& a) {
  GridSpec g = GridSpec::standard(a.n_max);
  if (!a.n_list.empty()) g.n_values = parse_ints(a.n_list);
  if (!a.p_list.empty()) {
    g.p_values.clear();
    for (const auto& s : split(a.p_list)) g.p_values.push_back(parse_probability(s));
  }
  if (a.k_rule == "all") g.k_rule = KRule::all_k;
  if (a.k_rule == "lower") g.k_rule = KRule::lower_tail_k;
  if (a.k_rule == "upper") g.k_rule = KRule::upper_tail_k;
  g.x_max = parse_rational(a.x_max);
  g.x_step = parse_rational(a.x_step);
  return g;
}

Tail parse_tail(const std::string& s) { return s == "upper" ? Tail::upper : Tail::lower; }

bool summary_passed(const CheckSummary& s) { return s.passed(); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Binomial tail bounds: evaluation, sweeps and certification suites"};
  app.require_subcommand(1);

  std::string output, format = "csv";
  int precision = 17;
  unsigned threads = 0;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-o,--output", output, "Output path (default stdout)");
    sub->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--threads", threads, "Worker threads (default BINTAIL_THREADS or all cores)");
  };

  // eval
  auto* eval = app.add_subcommand("eval", "All applicable bounds at one (n, k, p)");
  std::int64_t n = 0, k = 0;
  std::string p_text, tail = "lower";
  bool exact = false;
  eval->add_option("--n", n, "Number of trials")->required();
  eval->add_option("--k", k, "Tail index")->required();
  eval->add_option("--p", p_text, "Success probability, a/b or decimal")->required();
  eval->add_option("--tail", tail, "lower | upper")->check(CLI::IsMember({"lower", "upper"}));
  eval->add_flag("--exact", exact, "Also compute the exact tail");
  eval->add_option("--precision", precision, "Significant digits")->check(CLI::Range(1, 40));
  add_common(eval);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Per-point bounds and B/(bL) over a grid");
  GridArgs sweep_grid;
  add_grid_options(sweep, sweep_grid);
  sweep->add_option("--tail", tail, "lower | upper")->check(CLI::IsMember({"lower", "upper"}));
  add_common(sweep);

  // verify
  auto* verify = app.add_subcommand("verify", "Run a certification suite; exit 1 on violations");
  GridArgs verify_grid;
  std::string suite, violations_path;
  verify->add_option("--suite", suite, "Suite id")->required();
  verify->add_option("--violations", violations_path, "Also write violations as CSV");
  add_grid_options(verify, verify_grid);
  add_common(verify);

  // conjecture
  auto* conj = app.add_subcommand("conjecture", "Scan B/(bL) against the conjectured constants");
  GridArgs conj_grid;
  add_grid_options(conj, conj_grid);
  add_common(conj);

  // compare
  auto* cmp = app.add_subcommand("compare", "Bracket widths of ours vs. a baseline along the upper tail");
  std::string against = "mckay";
  cmp->add_option("--against", against, "mckay | chernoff | reverse")
      ->check(CLI::IsMember({"mckay", "chernoff", "reverse"}));
  cmp->add_option("--p", p_text, "Success probability")->required();
  cmp->add_option("--n", n, "Number of trials")->required()->check(CLI::PositiveNumber);
  add_common(cmp);

  // limits
  auto* lim = app.add_subcommand("limits", "Convergence tables toward the limit constants");
  std::string f_text = "3/10", schedule = "10,100,1000,10000", track = "ld", x_text = "1";
  p_text = "1/2";
  double final_gap = -1;
  lim->add_option("--f", f_text, "k/n for the large-deviation track");
  lim->add_option("--p", p_text, "Success probability");
  lim->add_option("--schedule", schedule, "Comma-separated increasing n values");
  lim->add_option("--track", track, "ld | moderate | clt")->check(CLI::IsMember({"ld", "moderate", "clt"}));
  lim->add_option("--x", x_text, "CLT offset x");
  lim->add_option("--final-gap", final_gap, "Relative gap required at the last n");
  add_common(lim);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  ValidatorOptions vopts;
  vopts.threads = threads;

  try {
    if (eval->parsed()) {
      BinomialParams params(n, k, Probability::parse(p_text));
      EvalReport r = evaluate_point(params, parse_tail(tail), exact);
      emit(format == "json" ? eval_json(r, precision) : eval_csv(r, precision), output);
      return kOk;
    }
    if (sweep->parsed()) {
      GridSpec g = build_grid(sweep_grid);
      Table t = sweep_table(g, parse_tail(tail), vopts);
      if (format == "json")
        emit(table_json(t, {{"grid", g.describe()}}), output);
      else
        emit(table_csv(t, {"grid: " + g.describe()}), output);
      return kOk;
    }
    if (verify->parsed()) {
      const auto& ids = suite_ids();
      if (std::find(ids.begin(), ids.end(), suite) == ids.end()) {
        std::cerr << "unknown suite: " << suite << "\n";
        return kUsage;
      }
      GridSpec g = build_grid(verify_grid);
      CheckSummary s = run_suite(suite, g, vopts);
      if (format == "json")
        emit(summary_json(s), output);
      else
        emit(violations_csv(s), output);
      if (!violations_path.empty()) emit(violations_csv(s), violations_path);
      return summary_passed(s) ? kOk : kViolations;
    }
    if (conj->parsed()) {
      GridSpec g = build_grid(conj_grid);
      CheckSummary s = conjecture_scan(g, vopts);
      if (format == "json") {
        emit(summary_json(s), output);
      } else {
        Table t;
        t.columns = {"metric", "value", "n", "k", "p"};
        for (const auto& w : s.metrics)
          t.rows.push_back({w.name, format_double(w.value), w.point.n ? std::to_string(*w.point.n) : "",
                            w.point.k ? std::to_string(*w.point.k) : "",
                            w.point.p ? rational_str(*w.point.p) : ""});
        emit(table_csv(t, {"grid: " + g.describe(), s.note}), output);
      }
      return summary_passed(s) ? kOk : kViolations;
    }
    if (cmp->parsed()) {
      Probability p = Probability::parse(p_text);
      Table t = compare_table(n, p, against);
      const std::string fs = format_double(crossover_f_star(p.value()).f_star);
      if (format == "json")
        emit(table_json(t, {{"f_star", fs}, {"against", against}}), output);
      else
        emit(table_csv(t, {"f_star=" + fs, "against=" + against}), output);
      return kOk;
    }
    if (lim->parsed()) {
      ConvergenceSpec spec;
      spec.track = track == "moderate" ? Track::moderate_deviation
                                       : (track == "clt" ? Track::clt : Track::large_deviation);
      spec.f = parse_rational(f_text);
      spec.p = parse_probability(p_text);
      spec.x = parse_rational(x_text);
      spec.schedule = parse_ints(schedule);
      if (final_gap > 0) {
        spec.final_gap = final_gap;
      } else if (spec.track == Track::moderate_deviation) {
        spec.final_gap = 0.05;
      } else if (spec.track == Track::clt) {
        spec.final_gap = 0.01;
      }
      CheckSummary s = convergence_suite(spec, vopts);
      if (format == "json")
        emit(summary_json(s), output);
      else
      {
        std::vector<std::string> comments;
        for (const auto& c : s.checks)
          comments.push_back(c.name + ": " + (c.passed ? "pass" : "FAIL") + (c.detail.empty() ? "" : " (" + c.detail + ")"));
        emit(table_csv(s.tables.front(), comments), output);
      }
      return summary_passed(s) ? kOk : kViolations;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
