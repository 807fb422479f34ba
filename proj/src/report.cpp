#include <bintail/exact_oracle.hpp>
#include <bintail/formulas.hpp>
#include <bintail/report.hpp>

#include "suite_support.hpp"

#include <json.hpp>

#include <cmath>
#include <functional>
#include <sstream>

namespace bintail {

namespace {

using ojson = nlohmann::ordered_json;

Field linear_field(const std::string& name, double v) { return {name, v, std::log(v), std::nullopt, ""}; }

Field log_field(const std::string& name, const LogValue& v) { return {name, v.value, v.log_value, std::nullopt, ""}; }

Field note_field(const std::string& name, const std::string& note) {
  return {name, std::nullopt, std::nullopt, std::nullopt, note};
}

// Appends fields from fill(), or one note field per name when the bound does not apply.
void guarded(std::vector<Field>& out, std::initializer_list<const char*> names,
             const std::function<void(std::vector<Field>&)>& fill) {
  try {
    std::vector<Field> tmp;
    fill(tmp);
    out.insert(out.end(), tmp.begin(), tmp.end());
  } catch (const PreconditionError& e) {
    for (const char* n : names) out.push_back(note_field(n, e.what()));
  } catch (const std::domain_error& e) {
    for (const char* n : names) out.push_back(note_field(n, e.what()));
  }
}

std::string num(const std::optional<double>& v, int precision) {
  return v ? format_double(*v, precision) : std::string();
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

EvalReport evaluate_point(const BinomialParams& params, Tail tail, bool exact) {
  EvalReport r;
  r.n = params.n;
  r.k = params.k;
  r.p = params.p.str();
  r.tail = tail;
  if (!params.p.is_rational()) r.warning = "decimal p routed to the high-precision backend";
  const bool upper = tail == Tail::upper;
  const bool endpoint = params.k == 0 || params.k == params.n;

  guarded(r.fields, {"L", "U"}, [&](std::vector<Field>& f) {
    RatioBoundSet rb = upper ? upper_tail_ratio_bounds(params) : ratio_bounds(params);
    f.push_back(linear_field("L", rb.L));
    f.push_back(linear_field("U", rb.U));
    f.back().note = rb.zero_branch ? "a=0 branch" : "a=" + std::to_string(rb.branch_a);
  });

  static constexpr const char* tail_names[] = {"b_down", "b_up", "chernoff", "reverse_type", "reverse_ash"};
  if (endpoint) {
    for (const char* n : tail_names) r.fields.push_back(note_field(n, "degenerate endpoint"));
  } else {
    guarded(r.fields, {"b_down", "b_up", "chernoff", "reverse_type", "reverse_ash"}, [&](std::vector<Field>& f) {
      TailBoundSet tb = upper ? upper_tail_bounds(params) : tail_bounds(params);
      f.push_back(log_field("b_down", tb.b_down));
      f.push_back(log_field("b_up", tb.b_up));
      f.push_back(log_field("chernoff", tb.chernoff));
      f.push_back(log_field("reverse_type", tb.reverse_type));
      f.push_back(log_field("reverse_ash", tb.reverse_ash));
      if (tb.ferrante)
        f.push_back(log_field("ferrante", *tb.ferrante));
      else
        f.push_back(note_field("ferrante", "requires k strictly beyond the mean"));
    });
  }
  if (endpoint) {
    r.fields.push_back(note_field("mckay_lo", "degenerate endpoint"));
    r.fields.push_back(note_field("mckay_hi", "degenerate endpoint"));
  } else {
    guarded(r.fields, {"mckay_lo", "mckay_hi"}, [&](std::vector<Field>& f) {
      Interval l = mckay_tail_log_bounds(params, tail);
      f.push_back(log_field("mckay_lo", from_log(l.lo)));
      f.push_back(log_field("mckay_hi", from_log(l.hi)));
    });
  }

  if (exact) {
    ExactReal t = upper ? upper_tail_exact(params) : lower_tail_exact(params);
    HighPrecision lv = t.log_value();
    double log_exact = lv.convert_to<double>();
    Field e{"exact", t.to_double(), log_exact, 1.0, t.is_rational() ? t.str() : ""};
    for (auto& f : r.fields) {
      if (!f.log_value || f.name == "L" || f.name == "U") continue;
      f.ratio_to_exact = std::exp(*f.log_value - log_exact);
    }
    r.fields.push_back(e);
  }
  return r;
}

std::string eval_csv(const EvalReport& r, int precision) {
  std::ostringstream os;
  os << "n,k,p,tail,field,value,log_value,ratio_to_exact,note\n";
  const char* tail = r.tail == Tail::upper ? "upper" : "lower";
  for (const auto& f : r.fields) {
    os << r.n << ',' << r.k << ',' << r.p << ',' << tail << ',' << f.name << ',' << num(f.value, precision) << ','
       << num(f.log_value, precision) << ',' << num(f.ratio_to_exact, precision) << ',' << csv_cell(f.note) << '\n';
  }
  if (!r.warning.empty())
    os << r.n << ',' << r.k << ',' << r.p << ',' << tail << ",warning,,,," << csv_cell(r.warning) << '\n';
  return os.str();
}

std::string eval_json(const EvalReport& r, int precision) {
  ojson j;
  j["schema"] = 1;
  j["n"] = r.n;
  j["k"] = r.k;
  j["p"] = r.p;
  j["tail"] = r.tail == Tail::upper ? "upper" : "lower";
  ojson fs = ojson::array();
  for (const auto& f : r.fields) {
    ojson o;
    o["name"] = f.name;
    o["value"] = f.value ? ojson(num(f.value, precision)) : ojson(nullptr);
    o["log_value"] = f.log_value ? ojson(num(f.log_value, precision)) : ojson(nullptr);
    o["ratio_to_exact"] = f.ratio_to_exact ? ojson(num(f.ratio_to_exact, precision)) : ojson(nullptr);
    if (!f.note.empty()) o["note"] = f.note;
    fs.push_back(std::move(o));
  }
  j["fields"] = std::move(fs);
  if (!r.warning.empty()) j["warning"] = r.warning;
  return j.dump(2) + "\n";
}

Table sweep_table(const GridSpec& grid, Tail tail, const ValidatorOptions& opts) {
  using namespace detail;
  validate_grid(grid);
  const auto ns = sorted_n(grid);
  const auto ps = sorted_p(grid);
  const bool upper = tail == Tail::upper;
  Table t;
  t.columns = {"n", "k", "p", "tail", "B", "b", "B_over_b", "L", "U", "B_over_bL", "b_down", "b_up", "chernoff"};
  auto parts = parallel_map(ns.size() * ps.size(), thread_count(opts), [&](std::size_t i) {
    const std::int64_t n = ns[i / ps.size()];
    const Rational& p = ps[i % ps.size()];
    RowCtx r(n, p);
    KRule rule = grid.k_rule == KRule::suite_default ? (upper ? KRule::upper_tail_k : KRule::lower_tail_k)
                                                     : grid.k_rule;
    KRange kr = k_range(rule, n, p, {0, n});
    Table part;
    for (std::int64_t k = kr.lo; k <= kr.hi; ++k) {
      BinomialParams bp(n, k, Probability::rational(p));
      const bool admissible = upper ? r.cmp(k) >= 0 : r.cmp(k) <= 0;
      HighPrecision B = upper ? HighPrecision(r.row.upper(k)) : HighPrecision(r.row.lower(k));
      HighPrecision ratio = upper ? r.row.upper_over_pmf(k) : r.row.lower_over_pmf(k);
      std::vector<std::string> row = {std::to_string(n), std::to_string(k), rational_str(p),
                                      upper ? "upper" : "lower", format_decimal(B, 17),
                                      format_decimal(HighPrecision(r.row.pmf(k)), 17), format_decimal(ratio, 17)};
      if (admissible) {
        RatioBoundSet rb = upper ? upper_tail_ratio_bounds(bp) : ratio_bounds(bp);
        row.push_back(format_double(rb.L));
        row.push_back(format_double(rb.U));
        row.push_back(format_double(ratio.convert_to<double>() / rb.L));
        if (k == 0 || k == n) {
          row.insert(row.end(), {"", "", ""});
        } else {
          TailBoundSet tb = upper ? upper_tail_bounds(bp) : tail_bounds(bp);
          row.push_back(format_double(tb.b_down.value));
          row.push_back(format_double(tb.b_up.value));
          row.push_back(format_double(tb.chernoff.value));
        }
      } else {
        row.insert(row.end(), {"", "", "", "", "", ""});
      }
      part.rows.push_back(std::move(row));
    }
    CheckSummary s;
    s.tables.push_back(std::move(part));
    return s;
  });
  for (auto& part : parts)
    for (auto& row : part.tables.front().rows) t.rows.push_back(std::move(row));
  return t;
}

Table compare_table(std::int64_t n, const Probability& p, const std::string& against) {
  if (against != "mckay" && against != "chernoff" && against != "reverse")
    throw std::invalid_argument("--against must be mckay, chernoff or reverse");
  const double pd = p.value(), qd = p.complement().value();
  const double f_star = crossover_f_star(pd).f_star;
  Table t;
  t.columns = {"n", "k", "f", "ours_ratio_width", "mckay_ratio_width", "ours_tail_width", "mckay_tail_width",
               "chernoff_reverse_width", "tighter", "side_of_f_star"};
  for (std::int64_t k = 1; k <= n - 1; ++k) {
    BinomialParams bp(n, k, p);
    if (bp.compare_k_to_mean() <= 0) continue;
    const double f = static_cast<double>(k) / n;
    RatioBoundSet rb = upper_tail_ratio_bounds(bp);
    TailBoundSet tb = upper_tail_bounds(bp);
    Interval mk = mckay_tail_log_bounds(bp, Tail::upper);
    const double ours_ratio = rb.U / rb.L;
    const double mckay_ratio = std::exp(formula::mckay_E<double>(n, k, pd, qd));
    const double ours_tail = std::exp(tb.b_up.log_value - tb.b_down.log_value);
    const double mckay_tail = std::exp(mk.hi - mk.lo);
    const double cr = std::exp(tb.chernoff.log_value - tb.reverse_ash.log_value);
    double other = against == "mckay" ? mckay_ratio : cr;
    double mine = against == "mckay" ? ours_ratio : ours_tail;
    t.rows.push_back({std::to_string(n), std::to_string(k), format_double(f), format_double(ours_ratio),
                      format_double(mckay_ratio), format_double(ours_tail), format_double(mckay_tail),
                      format_double(cr), mine < other ? "ours" : against, f < f_star ? "below" : "above"});
  }
  return t;
}

std::string table_csv(const Table& t, const std::vector<std::string>& comments) {
  std::ostringstream os;
  for (const auto& c : comments) os << "# " << c << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
    os << '\n';
  }
  return os.str();
}

std::string table_json(const Table& t, const std::vector<std::pair<std::string, std::string>>& meta) {
  ojson j;
  j["schema"] = 1;
  for (const auto& [k, v] : meta) j[k] = v;
  j["columns"] = t.columns;
  j["rows"] = t.rows;
  return j.dump(2) + "\n";
}

}  // namespace bintail
