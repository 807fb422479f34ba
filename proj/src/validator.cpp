#include "validator_engine.hpp"

#include <bintail/exact_real.hpp>

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <map>
#include <sstream>
#include <stdexcept>

namespace bintail {

namespace detail {

unsigned thread_count(const ValidatorOptions& opts) {
  if (opts.threads > 0) return opts.threads;
  if (const char* env = std::getenv("BINTAIL_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

HighPrecision high_tolerance() {
  static const HighPrecision tol("1e-30");
  return tol;
}

GridPoint point_npk(std::int64_t n, std::int64_t k, const Rational& p) {
  GridPoint pt;
  pt.n = n;
  pt.k = k;
  pt.p = p;
  return pt;
}

CheckSummary merge_in_order(const std::string& suite, std::vector<CheckSummary>& parts,
                            const ValidatorOptions& opts) {
  CheckSummary out;
  out.suite = suite;
  for (auto& part : parts) out.merge(part, opts.max_reported);
  return out;
}

std::string relation_label(std::string_view chain, std::string_view a, Rel rel, std::string_view b) {
  const char* op = rel == Rel::less ? " < " : (rel == Rel::less_eq ? " <= " : " == ");
  std::string s(chain);
  s += ": ";
  s += a;
  s += op;
  s += b;
  return s;
}

double Checker::margin(double lhs, double rhs, Domain dom) {
  if (dom == Domain::log) return rhs - lhs;
  double scale = std::max(std::abs(lhs), std::abs(rhs));
  return scale == 0 ? 0.0 : (rhs - lhs) / scale;
}

HighPrecision Checker::margin(const HighPrecision& lhs, const HighPrecision& rhs, Domain dom) {
  using std::abs;
  if (dom == Domain::log) return rhs - lhs;
  HighPrecision scale = std::max(abs(lhs), abs(rhs));
  return scale == 0 ? HighPrecision(0) : HighPrecision((rhs - lhs) / scale);
}

bool Checker::fast_pass(double lhs, Rel rel, double rhs, Domain dom) const {
  if (!std::isfinite(lhs) || !std::isfinite(rhs)) return false;
  double m = margin(lhs, rhs, dom);
  if (rel == Rel::equal) return std::abs(m) <= opts_.escalation_margin;
  return m > opts_.escalation_margin;
}

void Checker::note_margin(const GridPoint& pt, std::string_view chain_name, std::string_view a,
                          std::string_view b, double m) {
  if (!s_.extremal_witness || m < s_.extremal_witness->value) {
    Witness w;
    w.name = "tightest_strict_margin";
    w.value = m;
    w.point = pt;
    w.relation = relation_label(chain_name, a, Rel::less, b);
    w.sense = -1;
    s_.extremal_witness = std::move(w);
  }
}

void Checker::relation(const GridPoint& pt, std::string_view chain_name, std::string_view lhs_name,
                       const HighPrecision& lhs, Rel rel, std::string_view rhs_name, const HighPrecision& rhs,
                       Domain dom, bool escalated) {
  using std::abs;
  HighPrecision m = margin(lhs, rhs, dom);
  const HighPrecision& tol = high_tolerance();
  bool ok = rel == Rel::less ? m > tol : (rel == Rel::less_eq ? m > -tol : abs(m) <= tol);
  if (ok) {
    if (rel == Rel::less) note_margin(pt, chain_name, lhs_name, rhs_name, m.convert_to<double>());
    return;
  }
  ++s_.violation_count;
  if (s_.violations.size() >= opts_.max_reported) return;
  ViolationReport v;
  v.suite = s_.suite;
  v.relation = relation_label(chain_name, lhs_name, rel, rhs_name);
  if (dom == Domain::log) v.relation += " (log)";
  v.point = pt;
  v.lhs = format_decimal(lhs, 25);
  v.rhs = format_decimal(rhs, 25);
  v.margin = m.convert_to<double>();
  v.precision_escalated = escalated;
  s_.violations.push_back(std::move(v));
}

void Checker::exact_relation(const GridPoint& pt, std::string_view chain_name, std::string_view lhs_name,
                             const Rational& lhs, Rel rel, std::string_view rhs_name, const Rational& rhs) {
  bool ok = rel == Rel::less ? lhs < rhs : (rel == Rel::less_eq ? lhs <= rhs : lhs == rhs);
  if (ok) {
    if (rel == Rel::less)
      note_margin(pt, chain_name, lhs_name, rhs_name,
                  margin(HighPrecision(lhs), HighPrecision(rhs), Domain::linear).convert_to<double>());
    return;
  }
  ++s_.violation_count;
  if (s_.violations.size() >= opts_.max_reported) return;
  ViolationReport v;
  v.suite = s_.suite;
  v.relation = relation_label(chain_name, lhs_name, rel, rhs_name);
  v.point = pt;
  v.lhs = format_decimal(HighPrecision(lhs), 25);
  v.rhs = format_decimal(HighPrecision(rhs), 25);
  v.margin = margin(HighPrecision(lhs), HighPrecision(rhs), Domain::linear).convert_to<double>();
  s_.violations.push_back(std::move(v));
}

void Checker::metric(const std::string& name, double value, const GridPoint& pt, int sense) {
  for (auto& w : s_.metrics) {
    if (w.name != name) continue;
    if ((sense > 0 && value > w.value) || (sense < 0 && value < w.value)) {
      w.value = value;
      w.point = pt;
    }
    return;
  }
  Witness w;
  w.name = name;
  w.value = value;
  w.point = pt;
  w.sense = sense;
  s_.metrics.push_back(std::move(w));
}

void Checker::check(const std::string& name, bool passed, const std::string& detail) {
  s_.checks.push_back({name, passed, detail});
}

}  // namespace detail

GridSpec GridSpec::standard(std::int64_t n_max) {
  GridSpec g;
  for (std::int64_t n = 1; n <= n_max; ++n) g.n_values.push_back(n);
  for (int j = 1; j <= 19; ++j) g.p_values.push_back(Rational(j, 20));
  return g;
}

std::int64_t GridSpec::n_max() const {
  return n_values.empty() ? 0 : *std::max_element(n_values.begin(), n_values.end());
}

std::string rational_str(const Rational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << '/' << denominator(r);
  return os.str();
}

std::string GridSpec::describe() const {
  std::ostringstream os;
  os << "n=";
  if (!n_values.empty()) {
    auto [lo, hi] = std::minmax_element(n_values.begin(), n_values.end());
    os << *lo << ".." << *hi << " (" << n_values.size() << " values)";
  }
  os << " p=";
  for (std::size_t i = 0; i < p_values.size(); ++i) os << (i ? "," : "") << rational_str(p_values[i]);
  const char* rule = "suite-default";
  if (k_rule == KRule::all_k) rule = "all-k";
  if (k_rule == KRule::lower_tail_k) rule = "lower-tail-k";
  if (k_rule == KRule::upper_tail_k) rule = "upper-tail-k";
  os << " k_rule=" << rule;
  return os.str();
}

bool CheckSummary::passed() const {
  if (violation_count != 0) return false;
  return std::all_of(checks.begin(), checks.end(), [](const NamedCheck& c) { return c.passed; });
}

void CheckSummary::merge(const CheckSummary& other, std::size_t max_reported) {
  points_checked += other.points_checked;
  escalations += other.escalations;
  violation_count += other.violation_count;
  for (const auto& v : other.violations) {
    if (violations.size() >= max_reported) break;
    violations.push_back(v);
  }
  if (other.extremal_witness &&
      (!extremal_witness || other.extremal_witness->value < extremal_witness->value))
    extremal_witness = other.extremal_witness;
  for (const auto& w : other.metrics) {
    auto it = std::find_if(metrics.begin(), metrics.end(), [&](const Witness& m) { return m.name == w.name; });
    if (it == metrics.end()) {
      metrics.push_back(w);
    } else if ((w.sense > 0 && w.value > it->value) || (w.sense < 0 && w.value < it->value)) {
      *it = w;
    }
  }
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  tables.insert(tables.end(), other.tables.begin(), other.tables.end());
}

const std::vector<std::string>& suite_ids() {
  static const std::vector<std::string> ids = {
      "theorem1",   "theorem2", "theorem5_2", "upper_tail", "partial_mean", "successive_ratio",
      "phi_band",   "baselines", "mckay",     "gaussian",   "constants",    "conjecture",
      "monotonicity", "convergence"};
  return ids;
}

CheckSummary run_suite(const std::string& suite, const GridSpec& grid, const ValidatorOptions& opts) {
  using namespace detail;
  if (suite == "theorem1") return suite_theorem1(grid, opts);
  if (suite == "theorem2") return suite_theorem2(grid, opts);
  if (suite == "theorem5_2") return suite_theorem5_2(grid, opts);
  if (suite == "upper_tail") return suite_upper_tail(grid, opts);
  if (suite == "partial_mean") return suite_partial_mean(grid, opts);
  if (suite == "successive_ratio") return suite_successive_ratio(grid, opts);
  if (suite == "phi_band") return suite_phi_band(grid, opts);
  if (suite == "baselines") return suite_baselines(grid, opts);
  if (suite == "mckay") return suite_mckay(grid, opts);
  if (suite == "gaussian") return suite_gaussian(grid, opts);
  if (suite == "constants") return suite_constants(grid, opts);
  if (suite == "conjecture") return conjecture_scan(grid, opts);
  if (suite == "monotonicity") return monotonicity_suite(grid, opts);
  if (suite == "convergence") {
    // Runs the three tracks with their default schedules.
    CheckSummary out;
    out.suite = "convergence";
    ConvergenceSpec ld;
    out.merge(convergence_suite(ld, opts));
    ConvergenceSpec md;
    md.track = Track::moderate_deviation;
    md.schedule = {1000, 10000, 100000, 1000000};
    md.final_gap = 0.05;
    out.merge(convergence_suite(md, opts));
    ConvergenceSpec clt;
    clt.track = Track::clt;
    clt.schedule = {100, 1000, 10000, 100000, 1000000};
    clt.final_gap = 0.01;
    out.merge(convergence_suite(clt, opts));
    return out;
  }
  throw std::invalid_argument("unknown suite: " + suite);
}

namespace {

using ojson = nlohmann::ordered_json;

ojson point_json(const GridPoint& pt) {
  ojson j = ojson::object();
  if (pt.n) j["n"] = *pt.n;
  if (pt.k) j["k"] = *pt.k;
  if (pt.p) j["p"] = rational_str(*pt.p);
  if (pt.f) j["f"] = rational_str(*pt.f);
  if (pt.x) j["x"] = *pt.x;
  return j;
}

ojson witness_json(const Witness& w) {
  ojson j;
  j["name"] = w.name;
  j["value"] = w.value;
  j["point"] = point_json(w.point);
  if (!w.relation.empty()) j["relation"] = w.relation;
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string summary_json(const CheckSummary& s) {
  ojson j;
  j["schema"] = 1;
  j["suite"] = s.suite;
  j["passed"] = s.passed();
  j["points_checked"] = s.points_checked;
  j["escalations"] = s.escalations;
  j["violation_count"] = s.violation_count;
  ojson vs = ojson::array();
  for (const auto& v : s.violations) {
    ojson o;
    o["suite"] = v.suite;
    o["relation"] = v.relation;
    o["point"] = point_json(v.point);
    o["lhs"] = v.lhs;
    o["rhs"] = v.rhs;
    o["margin"] = v.margin;
    o["precision_escalated"] = v.precision_escalated;
    vs.push_back(std::move(o));
  }
  j["violations"] = std::move(vs);
  j["extremal_witness"] = s.extremal_witness ? witness_json(*s.extremal_witness) : ojson(nullptr);
  ojson ms = ojson::array();
  for (const auto& w : s.metrics) ms.push_back(witness_json(w));
  j["metrics"] = std::move(ms);
  ojson cs = ojson::array();
  for (const auto& c : s.checks) cs.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  j["checks"] = std::move(cs);
  ojson ts = ojson::array();
  for (const auto& t : s.tables) ts.push_back({{"columns", t.columns}, {"rows", t.rows}});
  j["tables"] = std::move(ts);
  if (!s.note.empty()) j["note"] = s.note;
  return j.dump(2) + "\n";
}

std::string violations_csv(const CheckSummary& s, bool header) {
  std::ostringstream os;
  if (header) os << "suite,n,k,p,lhs,rhs,margin,relation,x\n";
  for (const auto& v : s.violations) {
    os << v.suite << ',' << (v.point.n ? std::to_string(*v.point.n) : "") << ','
       << (v.point.k ? std::to_string(*v.point.k) : "") << ',' << (v.point.p ? rational_str(*v.point.p) : "")
       << ',' << v.lhs << ',' << v.rhs << ',' << format_double(v.margin) << ',' << csv_field(v.relation) << ','
       << (v.point.x ? *v.point.x : "") << '\n';
  }
  return os.str();
}

}  // namespace bintail
