#include "suite_support.hpp"

#include <bintail/bounds.hpp>

#include <cmath>
#include <map>

namespace bintail {

namespace detail {

namespace fm = formula;

namespace {

constexpr Rel lt = Rel::less;
constexpr Rel le = Rel::less_eq;

HighPrecision hlog(const HighPrecision& x) {
  using std::log;
  return log(x);
}

HighPrecision hsqrt(const HighPrecision& x) {
  using std::sqrt;
  return sqrt(x);
}

HighPrecision hexp(const HighPrecision& x) {
  using std::exp;
  return exp(x);
}

const Rational& conjecture_constant() {
  static const Rational c(180451625, 143327232);
  return c;
}

GridPoint point_x(const Rational& x) {
  GridPoint pt;
  pt.x = rational_str(x);
  return pt;
}

}  // namespace

CheckSummary suite_phi_band(const GridSpec& grid, const ValidatorOptions& opts) {
  validate_grid(grid);
  const auto ns = sorted_n(grid);
  const std::int64_t n_max = ns.back();
  // d-(x) = r(x) - 1/(12x), d+(x) = r(x) - 1/(12x+1) with r the Stirling remainder.
  std::vector<HighPrecision> dm(n_max + 1), dp(n_max + 1);
  for (std::int64_t x = 1; x <= n_max; ++x) {
    HighPrecision X(x);
    HighPrecision r = fm::stirling_remainder(X);
    dm[x] = r - 1 / (12 * X);
    dp[x] = r - 1 / (12 * X + 1);
  }
  auto parts = parallel_map(ns.size(), thread_count(opts), [&](std::size_t i) {
    Checker c("phi_band", opts);
    const std::int64_t n = ns[i];
    for (std::int64_t k = 1; k <= n - 1; ++k) {
      c.count_point();
      GridPoint pt;
      pt.n = n;
      pt.k = k;
      const std::int64_t m = n - k;
      // ln varphi - ln varphi_- and ln varphi_+ - ln varphi.
      HighPrecision lower_gap = dm[n] - dm[k] - dm[m];
      HighPrecision upper_gap = dp[k] + dp[m] - dp[n];
      c.relation(pt, "Stirling band", "ln phi-", HighPrecision(0), lt, "ln phi", lower_gap, Domain::log, false);
      c.relation(pt, "Stirling band", "ln phi", HighPrecision(0), lt, "ln phi+", upper_gap, Domain::log, false);
      double N = n, K = k, M = m;
      double log_width = (1 / (12 * N + 1) - 1 / (12 * N)) - (1 / (12 * K + 1) - 1 / (12 * K)) -
                         (1 / (12 * M + 1) - 1 / (12 * M));
      c.metric("max phi+/phi-", std::exp(log_width), pt, +1);
    }
    return c.take();
  });
  CheckSummary out = merge_in_order("phi_band", parts, opts);
  if (std::binary_search(ns.begin(), ns.end(), std::int64_t{2})) {
    const double expected = std::exp(29.0 / 2600);
    for (const auto& w : out.metrics) {
      if (w.name != "max phi+/phi-") continue;
      bool at = w.point.n == 2 && w.point.k == 1;
      bool ok = at && std::abs(w.value / expected - 1) < 1e-12;
      out.checks.push_back({"max phi+/phi- equals e^(29/2600) at (2,1)", ok,
                            "value=" + format_double(w.value) + " expected=" + format_double(expected)});
    }
  }
  return out;
}

CheckSummary suite_gaussian(const GridSpec& grid, const ValidatorOptions& opts) {
  if (!(grid.x_step > 0) || grid.x_max < 0) throw std::invalid_argument("gaussian suite needs x_step > 0, x_max >= 0");
  const std::int64_t count = floor_mul(1, Rational(grid.x_max / grid.x_step)) + 1;
  struct Sample {
    ExactReal phi;
    HighPrecision ell, ups, ratio_lo, ratio_hi;
  };
  std::vector<Sample> samples(count);
  auto parts = parallel_map(count, thread_count(opts), [&](std::size_t i) {
    Checker c("gaussian", opts);
    const Rational xr = grid.x_step * static_cast<long long>(i);
    const HighPrecision x(xr);
    const GridPoint pt = point_x(xr);
    c.count_point();
    HighPrecision g = hexp(-x * x / 2);
    HighPrecision ell = fm::ell_scaled(x) / sqrt_2pi_v<HighPrecision>();
    HighPrecision ups = fm::upsilon_scaled(x) / sqrt_2pi_v<HighPrecision>();
    HighPrecision lo = ell * g, hi = ups * g;
    HighPrecision tol = lo * HighPrecision("1e-12");
    if (tol > HighPrecision("1e-12")) tol = HighPrecision("1e-12");
    ExactReal phi = gaussian_upper_tail(x, tol);
    HighPrecision plo(phi.lower()), phi_hi(phi.upper());
    HighPrecision sharp = sqrt_2pi_v<HighPrecision>() / 2 * lo;
    c.relation(pt, "Gaussian tail bracket", "ell e^(-x^2/2)", lo, lt, "Phi(-x)", plo, Domain::linear, false);
    c.relation(pt, "Gaussian tail bracket", "Phi(-x)", phi_hi, lt, "ups e^(-x^2/2)", hi, Domain::linear, false);
    if (xr == 0) {
      c.relation(pt, "Gaussian sharp upper bound", "Phi(-x)", HighPrecision(phi.value()), Rel::equal,
                 "sqrt(pi/2) ell e^(-x^2/2)", sharp, Domain::linear, false);
    } else {
      c.relation(pt, "Gaussian sharp upper bound", "Phi(-x)", phi_hi, lt, "sqrt(pi/2) ell e^(-x^2/2)", sharp,
                 Domain::linear, false);
    }
    samples[i] = {phi, ell, ups, plo / lo, phi_hi / lo};
    c.metric("min Phi(-x)/(ell e^(-x^2/2))", (plo / lo).convert_to<double>(), pt, -1);
    return c.take();
  });
  CheckSummary out = merge_in_order("gaussian", parts, opts);
  Checker c("gaussian", opts);
  for (std::int64_t i = 0; i + 1 < count; ++i) {
    const GridPoint pt = point_x(grid.x_step * static_cast<long long>(i + 1));
    // Phi(-x) e^{x^2/2} / ell(x) at consecutive x, compared through their error intervals.
    c.relation(pt, "Gaussian ratio strictly decreasing", "ratio(x)", samples[i + 1].ratio_hi, lt,
               "ratio(x - step)", samples[i].ratio_lo, Domain::linear, false);
  }
  {
    const auto& s0 = samples[0];
    HighPrecision target = sqrt_2pi_v<HighPrecision>() / 2;
    using std::abs;
    HighPrecision slack = s0.ratio_hi - s0.ratio_lo + HighPrecision("1e-45");
    HighPrecision mid = (s0.ratio_hi + s0.ratio_lo) / 2;
    bool ok = abs(mid - target) <= slack;
    c.check("ratio at x=0 equals sqrt(pi/2)", ok, "ratio=" + format_decimal(mid, 20));
  }
  out.merge(c.take(), opts.max_reported);
  return out;
}

CheckSummary suite_constants(const GridSpec& grid, const ValidatorOptions& opts) {
  validate_grid(grid);
  const std::int64_t k_max = 500;
  std::vector<RamanujanSolution> sols(k_max + 1);
  parallel_map(static_cast<std::size_t>(k_max), thread_count(opts), [&](std::size_t i) {
    sols[i + 1] = ramanujan_theta_solution(static_cast<std::int64_t>(i) + 1);
    return CheckSummary{};
  });
  Checker c("constants", opts);
  const ExactReal third(Rational(1, 3));
  const HighPrecision top = (euler_v<HighPrecision>() - 2) / 2;
  const ExactReal top_x = ExactReal::from_float<kHighDigits>(top, HighPrecision("1e-48"));
  Table tt;
  tt.columns = {"k", "theta"};
  using std::abs;
  for (std::int64_t k = 1; k <= k_max; ++k) {
    const ExactReal& th = sols[k].theta;
    GridPoint pt;
    pt.k = k;
    c.count_point();
    tt.rows.push_back({std::to_string(k), th.decimal(30)});
    if (!(abs(sols[k].residual) <= sols[k].residual_bound))
      c.relation(pt, "Ramanujan residual", "|residual|", abs(sols[k].residual), le, "bound",
                 sols[k].residual_bound, Domain::linear, false);
    if (!certainly_less(third, th))
      c.relation(pt, "theta range", "1/3", HighPrecision(third.value()), lt, "theta_k", th.to_high(),
                 Domain::linear, false);
    if (k == 1) {
      HighPrecision d = abs(th.to_high() - top);
      c.check("theta_1 equals (e-2)/2 to 12 digits", d < HighPrecision("1e-12") * top, "theta_1=" + th.decimal(20));
      continue;
    }
    if (!certainly_less(th, top_x))
      c.relation(pt, "theta range", "theta_k", th.to_high(), lt, "(e-2)/2", top, Domain::linear, false);
    if (!certainly_less(th, sols[k - 1].theta))
      c.relation(pt, "theta strictly decreasing", "theta_k", th.to_high(), lt, "theta_(k-1)",
                 sols[k - 1].theta.to_high(), Domain::linear, false);
  }
  c.summary().tables.push_back(std::move(tt));
  CheckSummary out = c.take();

  // zeta_{n,k} over the grid's n values.
  const auto ns = sorted_n(grid);
  auto zparts = parallel_map(ns.size(), thread_count(opts), [&](std::size_t i) {
    Checker zc("constants", opts);
    const std::int64_t n = ns[i];
    for (std::int64_t k = 1; k <= n - 1; ++k) {
      zc.count_point();
      GridPoint pt;
      pt.n = n;
      pt.k = k;
      ExactReal z = median_deficit_zeta(n, k);
      const Rational& zv = z.value();
      if (2 * k <= n) {
        zc.exact_relation(pt, "median deficit (n >= 2k)", "1/3", Rational(1, 3), lt, "zeta", zv);
        zc.exact_relation(pt, "median deficit (n >= 2k)", "zeta", zv, le, "1/2", Rational(1, 2));
      }
      if (2 * k >= n) {
        zc.exact_relation(pt, "median deficit (n <= 2k)", "1/2", Rational(1, 2), le, "zeta", zv);
        zc.exact_relation(pt, "median deficit (n <= 2k)", "zeta", zv, lt, "2/3", Rational(2, 3));
      }
      if (2 * k == n) zc.exact_relation(pt, "median deficit at n = 2k", "zeta", zv, Rel::equal, "1/2", Rational(1, 2));
    }
    return zc.take();
  });
  for (auto& z : zparts) out.merge(z, opts.max_reported);
  return out;
}

}  // namespace detail

using namespace detail;

CheckSummary conjecture_scan(const GridSpec& grid, const ValidatorOptions& opts) {
  validate_grid(grid);
  const auto ns = sorted_n(grid);
  const auto ps = sorted_p(grid);
  const HighPrecision c1(conjecture_constant());
  const HighPrecision c2 = hsqrt(pi_v<HighPrecision>() / 2);

  // Per p: R(n, k) = B/(b L) for k <= pn, as one table over the grid's n.
  using Tab = std::vector<std::vector<HighPrecision>>;
  std::vector<Tab> tabs(ps.size());
  auto parts = parallel_map(ps.size(), thread_count(opts), [&](std::size_t j) {
    Checker c("conjecture", opts);
    const Rational& p = ps[j];
    Tab& tab = tabs[j];
    tab.resize(ns.size());
    for (std::size_t i = 0; i < ns.size(); ++i) {
      RowCtx r(ns[i], p);
      const std::int64_t n = ns[i];
      auto kr = k_range(grid.k_rule, n, p, {0, r.floor_pn});
      // Zero marks points outside the scanned k range; real ratios are >= 1.
      tab[i].assign(r.floor_pn + 1, HighPrecision(0));
      for (std::int64_t k = kr.lo; k <= kr.hi; ++k) {
        c.count_point();
        const GridPoint pt = point_npk(n, k, p);
        HighPrecision L = k == 0 ? HighPrecision(1) : fm::lower_L(HighPrecision(n), HighPrecision(k), r.pH, r.qH);
        HighPrecision R = r.row.lower_over_pmf(k) / L;
        tab[i][k] = R;
        c.metric("max B/(bL)", R.convert_to<double>(), pt, +1);
        c.relation(pt, "conjectured ratio bound", "B/(bL)", R, lt, "180451625/143327232", c1, Domain::linear, false);
        if (r.cmp(k + 1) <= 0) {
          c.metric("max B/(bL), k <= pn-1", R.convert_to<double>(), pt, +1);
          c.relation(pt, "conjectured ratio bound, k <= pn-1", "B/(bL)", R, lt, "sqrt(pi/2)", c2, Domain::linear,
                     false);
        }
        if (k > kr.lo)
          c.relation(pt, "conjectured monotonicity in k", "R(n,k-1)", tab[i][k - 1], le, "R(n,k)", R,
                     Domain::linear, false);
        if (i > 0 && ns[i - 1] == n - 1 && k < static_cast<std::int64_t>(tab[i - 1].size()) &&
            tab[i - 1][k] > 0)
          c.relation(pt, "conjectured monotonicity in n", "R(n,k)", R, le, "R(n-1,k)", tab[i - 1][k],
                     Domain::linear, false);
      }
    }
    return c.take();
  });
  CheckSummary out = merge_in_order("conjecture", parts, opts);

  // Monotonicity in p across the grid's p values.
  Checker pc("conjecture", opts);
  for (std::size_t j = 0; j + 1 < ps.size(); ++j) {
    for (std::size_t i = 0; i < ns.size(); ++i) {
      const auto& lo = tabs[j][i];
      const auto& hi = tabs[j + 1][i];
      for (std::size_t k = 0; k < lo.size(); ++k)
        if (lo[k] > 0 && hi[k] > 0)
          pc.relation(point_npk(ns[i], static_cast<std::int64_t>(k), ps[j + 1]), "conjectured monotonicity in p", "R(p_next)", hi[k], le,
                    "R(p)", lo[k], Domain::linear, false);
    }
  }
  out.merge(pc.take(), opts.max_reported);

  // Refinement in p: p = k/n + j/100 for j = 0..10, using the decimal oracle.
  auto refine = parallel_map(ns.size(), thread_count(opts), [&](std::size_t i) {
    Checker c("conjecture", opts);
    const std::int64_t n = ns[i];
    OracleOptions oo;
    oo.rational_n_limit = 0;
    for (std::int64_t k = 1; k <= n - 1; ++k) {
      HighPrecision prev;
      for (int j = 0; j <= 10; ++j) {
        Rational p = Rational(k, n) + Rational(j, 100);
        if (!(p < 1)) break;
        HighPrecision pH(p), qH(1 - p);
        HighPrecision R = tail_pmf_ratio_exact(BinomialParams(n, k, Probability::rational(p)), oo).to_high() /
                          fm::lower_L(HighPrecision(n), HighPrecision(k), pH, qH);
        GridPoint pt = point_npk(n, k, p);
        c.metric("max B/(bL), p refinement", R.convert_to<double>(), pt, +1);
        if (j > 0)
          c.relation(pt, "conjectured monotonicity in p (refined)", "R(p)", R, le, "R(p - 1/100)", prev,
                     Domain::linear, false);
        prev = R;
      }
    }
    return c.take();
  });
  for (auto& r : refine) out.merge(r, opts.max_reported);

  // Slice p = k/n at k = 12.
  Checker sc("conjecture", opts);
  Table t;
  t.columns = {"n", "k", "p", "ratio", "gap_to_constant"};
  HighPrecision prev(0);
  bool increasing = true;
  HighPrecision last_gap;
  for (std::int64_t n : {24, 50, 100, 1000, 10000, 100000}) {
    const std::int64_t k = 12;
    Rational p(k, n);
    HighPrecision R = tail_pmf_ratio_exact(BinomialParams(n, k, Probability::rational(p))).to_high() /
                      fm::lower_L(HighPrecision(n), HighPrecision(k), HighPrecision(p), HighPrecision(1 - p));
    GridPoint pt = point_npk(n, k, p);
    sc.relation(pt, "k = 12 slice", "B/(bL)", R, lt, "180451625/143327232", c1, Domain::linear, false);
    if (!(R > prev)) increasing = false;
    prev = R;
    last_gap = (c1 - R) / c1;
    t.rows.push_back({std::to_string(n), std::to_string(k), rational_str(p), format_decimal(R, 17),
                      format_decimal(last_gap, 6)});
  }
  sc.check("k = 12 slice increases toward 180451625/143327232", increasing && last_gap < HighPrecision("1e-4"),
           "relative gap at n=100000: " + format_decimal(last_gap, 6));
  out.merge(sc.take(), opts.max_reported);
  out.tables.push_back(std::move(t));
  out.note = "evidence on the scanned grid only; the bounds are conjectured, not proven";
  return out;
}

CheckSummary monotonicity_suite(const GridSpec& grid, const ValidatorOptions& opts) {
  validate_grid(grid);
  const auto ns = sorted_n(grid);
  const auto ps = sorted_p(grid);
  const std::vector<Rational> fs = ps;  // ladders k = f n use the same fractions

  // Along n at fixed p.
  auto along_n = parallel_map(ps.size(), thread_count(opts), [&](std::size_t j) {
    Checker c("monotonicity", opts);
    const Rational& p = ps[j];
    std::optional<BinomialRow> prev;
    struct Ladder {
      std::int64_t n = 0;
      Rational ratio;
      HighPrecision scaled, L, U;
      fm::TildeLogs<HighPrecision> t;
    };
    std::map<std::size_t, Ladder> ladders;
    for (std::size_t i = 0; i < ns.size(); ++i) {
      const std::int64_t n = ns[i];
      RowCtx r(n, p);
      const bool adjacent = prev && prev->n() == n - 1;
      for (std::int64_t k = 0; k <= n; ++k) {
        c.count_point();
        GridPoint pt = point_npk(n, k, p);
        const Rational mu = r.row.partial_mean(k);
        if (k + 1 <= n) {
          c.exact_relation(pt, "B increasing in k", "B(k)", r.row.lower(k), lt, "B(k+1)", r.row.lower(k + 1));
          const Rational mu1 = r.row.partial_mean(k + 1);
          c.exact_relation(pt, "mu increasing in k", "mu(k)", mu, lt, "mu(k+1)", mu1);
          c.exact_relation(pt, "k - mu increasing in k", "k-mu(k)", Rational(k) - mu, lt, "k+1-mu(k+1)",
                           Rational(k + 1) - mu1);
        }
        if (adjacent && k <= n - 1) {
          c.exact_relation(pt, "B decreasing in n", "B(n)", r.row.lower(k), lt, "B(n-1)", prev->lower(k));
          if (k >= 1)
            c.exact_relation(pt, "mu increasing in n", "mu(n-1)", prev->partial_mean(k), lt, "mu(n)", mu);
        }
      }
      for (std::size_t fi = 0; fi < fs.size(); ++fi) {
        const Rational& f = fs[fi];
        if (Rational(n) * f != Rational(floor_mul(n, f))) continue;
        const std::int64_t k = floor_mul(n, f);
        if (k < 1 || k > n - 1) continue;
        Ladder cur;
        cur.n = n;
        cur.ratio = r.row.lower(k) / r.row.pmf(k);
        HighPrecision N(n), K(k);
        cur.scaled = r.row.log_lower(k) + fm::scaled_entropy(N, K, r.pH, r.qH) + hlog(N) / 2;
        const bool below = f <= p;
        if (below) {
          cur.L = fm::lower_L(N, K, r.pH, r.qH);
          cur.U = fm::upper_U(N, K, r.pH, r.qH).value;
          cur.t = fm::tilde_logs(N, K, cur.L, cur.U);
        }
        auto it = ladders.find(fi);
        if (it != ladders.end()) {
          const Ladder& old = it->second;
          GridPoint pt = point_npk(n, k, p);
          pt.f = f;
          c.exact_relation(pt, "B/b along k = fn increasing in n", "B/b(prev n)", old.ratio, lt, "B/b(n)",
                           cur.ratio);
          c.relation(pt, "sqrt(n) B e^nD along k = fn increasing in n", "value(prev n)", old.scaled, lt, "value(n)",
                     cur.scaled, Domain::log, false);
          if (below) {
            c.relation(pt, "L along k = fn increasing in n", "L(prev n)", old.L, lt, "L(n)", cur.L, Domain::linear,
                       false);
            c.relation(pt, "U along k = fn increasing in n", "U(prev n)", old.U, lt, "U(n)", cur.U, Domain::linear,
                       false);
            c.relation(pt, "Lt- along k = fn increasing in n", "Lt-(prev n)", old.t.l_minus, lt, "Lt-(n)",
                       cur.t.l_minus, Domain::log, false);
            c.relation(pt, "Lt along k = fn increasing in n", "Lt(prev n)", old.t.l, lt, "Lt(n)", cur.t.l,
                       Domain::log, false);
            c.relation(pt, "Ut along k = fn increasing in n", "Ut(prev n)", old.t.u, lt, "Ut(n)", cur.t.u,
                       Domain::log, false);
            c.relation(pt, "Ut+ along k = fn increasing in n", "Ut+(prev n)", old.t.u_plus, lt, "Ut+(n)",
                       cur.t.u_plus, Domain::log, false);
          }
        }
        ladders[fi] = std::move(cur);
      }
      prev.emplace(std::move(r.row));
    }
    return c.take();
  });
  CheckSummary out = merge_in_order("monotonicity", along_n, opts);

  // Along p at fixed n.
  auto along_p = parallel_map(ns.size(), thread_count(opts), [&](std::size_t i) {
    Checker c("monotonicity", opts);
    const std::int64_t n = ns[i];
    std::optional<BinomialRow> prev;
    for (const auto& p : ps) {
      BinomialRow row(n, p);
      if (prev) {
        for (std::int64_t k = 0; k <= n; ++k) {
          GridPoint pt = point_npk(n, k, p);
          if (k <= n - 1) c.exact_relation(pt, "B decreasing in p", "B(p)", row.lower(k), lt, "B(p_prev)", prev->lower(k));
          if (k >= 1)
            c.exact_relation(pt, "mu increasing in p", "mu(p_prev)", prev->partial_mean(k), lt, "mu(p)",
                             row.partial_mean(k));
        }
      }
      prev.emplace(std::move(row));
    }
    return c.take();
  });
  for (auto& part : along_p) out.merge(part, opts.max_reported);
  return out;
}

namespace {

struct TrackPoint {
  std::int64_t n;
  std::vector<std::string> cells;
  HighPrecision value;
};

HighPrecision log_lower_tail(std::int64_t n, std::int64_t k, const Rational& p) {
  return lower_tail_exact(BinomialParams(n, k, Probability::rational(p))).log_value();
}

// floor(pn - n^{2/3}), settled exactly: k <= pn - a  <=>  (pn - k)^3 >= n^2.
std::int64_t moderate_k(std::int64_t n, const Rational& p) {
  using std::cbrt;
  const Rational pn = Rational(n) * p;
  const Rational n2 = Rational(n) * n;
  HighPrecision guess = HighPrecision(pn) - cbrt(HighPrecision(n2));
  using std::floor;
  std::int64_t k = floor(guess).convert_to<std::int64_t>();
  auto ok = [&](std::int64_t kk) {
    Rational d = pn - kk;
    return d >= 0 && d * d * d >= n2;
  };
  while (!ok(k)) --k;
  while (ok(k + 1)) ++k;
  return k;
}

}  // namespace

CheckSummary convergence_suite(const ConvergenceSpec& spec, const ValidatorOptions& opts) {
  if (spec.schedule.empty()) throw std::invalid_argument("empty convergence schedule");
  for (std::size_t i = 1; i < spec.schedule.size(); ++i)
    if (spec.schedule[i] <= spec.schedule[i - 1]) throw std::invalid_argument("schedule must be increasing");
  if (!(spec.p > 0 && spec.p < 1)) throw std::invalid_argument("p must lie in (0, 1)");
  const Rational& p = spec.p;
  const Rational q = 1 - p;
  const HighPrecision pH(p), qH(q);

  Table t;
  HighPrecision limit;
  std::string name;
  std::vector<HighPrecision> values;
  std::vector<std::vector<std::string>> rows(spec.schedule.size());
  values.resize(spec.schedule.size());

  if (spec.track == Track::large_deviation) {
    if (!(spec.f > 0 && spec.f < p)) throw PreconditionError("large-deviation track requires 0 < f < p");
    name = "large deviation: sqrt(n) B e^{nD}";
    const HighPrecision f(spec.f);
    limit = hsqrt((1 - f) / (2 * pi_v<HighPrecision>() * f)) * pH / (pH - f);
    t.columns = {"n", "k", "value", "limit", "relative_gap"};
    for (auto n : spec.schedule)
      if (Rational(n) * spec.f != Rational(floor_mul(n, spec.f)))
        throw PreconditionError("large-deviation track requires f n to be an integer");
    parallel_map(spec.schedule.size(), thread_count(opts), [&](std::size_t i) {
      const std::int64_t n = spec.schedule[i], k = floor_mul(n, spec.f);
      HighPrecision N(n), K(k);
      values[i] = hexp(log_lower_tail(n, k, p) + fm::scaled_entropy(N, K, pH, qH) + hlog(N) / 2);
      rows[i] = {std::to_string(n), std::to_string(k), format_decimal(values[i], 17), "", ""};
      return CheckSummary{};
    });
  } else if (spec.track == Track::moderate_deviation) {
    name = "moderate deviation: B (a_n/sqrt(n)) e^{nD(f_n)}, a_n = n^(2/3)";
    limit = hsqrt(pH * qH / (2 * pi_v<HighPrecision>()));
    t.columns = {"n", "k", "value", "limit", "relative_gap", "value_unfloored_exponent"};
    parallel_map(spec.schedule.size(), thread_count(opts), [&](std::size_t i) {
      const std::int64_t n = spec.schedule[i];
      const std::int64_t k = moderate_k(n, p);
      using std::cbrt;
      HighPrecision N(n), K(k);
      HighPrecision a = cbrt(N * N);
      HighPrecision base = log_lower_tail(n, k, p) + hlog(a / hsqrt(N));
      values[i] = hexp(base + fm::scaled_entropy(N, K, pH, qH));
      HighPrecision real_k = pH * N - a;
      HighPrecision unfloored = hexp(base + fm::scaled_entropy(N, real_k, pH, qH));
      rows[i] = {std::to_string(n), std::to_string(k), format_decimal(values[i], 17), "", "",
                 format_decimal(unfloored, 17)};
      return CheckSummary{};
    });
  } else {
    name = "CLT: Bdown at k_n = pn - x sqrt(pqn)";
    const HighPrecision x(spec.x);
    limit = fm::ell_scaled(x) / sqrt_2pi_v<HighPrecision>() * hexp(-x * x / 2);
    t.columns = {"n", "k_n", "Bdown", "limit", "relative_gap", "B_at_floor_k", "Bup"};
    parallel_map(spec.schedule.size(), thread_count(opts), [&](std::size_t i) {
      const std::int64_t n = spec.schedule[i];
      HighPrecision N(n);
      HighPrecision K = pH * N - x * hsqrt(pH * qH * N);
      HighPrecision L = fm::lower_L(N, K, pH, qH);
      HighPrecision U = fm::upper_U(N, K, pH, qH).value;
      auto tl = fm::tilde_logs(N, K, L, U);
      HighPrecision nd = fm::scaled_entropy(N, K, pH, qH);
      values[i] = hexp(tl.l_minus - hlog(N) / 2 - nd);
      HighPrecision up = hexp(tl.u_plus - hlog(N) / 2 - nd);
      using std::floor;
      std::int64_t kf = floor(K).convert_to<std::int64_t>();
      HighPrecision B = hexp(log_lower_tail(n, kf, p));
      rows[i] = {std::to_string(n), format_decimal(K, 17), format_decimal(values[i], 17), "", "",
                 format_decimal(B, 17), format_decimal(up, 17)};
      return CheckSummary{};
    });
  }

  Checker c("convergence", opts);
  bool monotone_gap = true;
  bool increasing = true;
  HighPrecision prev_gap, gap;
  using std::abs;
  for (std::size_t i = 0; i < values.size(); ++i) {
    gap = abs(values[i] - limit) / limit;
    rows[i][3] = format_decimal(limit, 17);
    rows[i][4] = format_decimal(gap, 6);
    if (i > 0) {
      if (!(gap < prev_gap)) monotone_gap = false;
      if (!(values[i] > values[i - 1])) increasing = false;
    }
    prev_gap = gap;
    GridPoint pt;
    pt.n = spec.schedule[i];
    pt.p = p;
    if (spec.track == Track::large_deviation) pt.f = spec.f;
    c.count_point();
  }
  t.rows = std::move(rows);
  const bool final_ok = gap < HighPrecision(spec.final_gap);
  if (spec.track == Track::large_deviation) {
    c.check(name + " strictly increasing", increasing, "");
  } else {
    c.check(name + " gap shrinks monotonically", monotone_gap, "");
  }
  c.check(name + " final relative gap below " + format_double(spec.final_gap, 6), final_ok,
          "gap=" + format_decimal(gap, 6));
  c.summary().tables.push_back(std::move(t));
  return c.take();
}

CheckSummary convergence_suite(const Rational& f, const Rational& p, const std::vector<std::int64_t>& schedule,
                               const ValidatorOptions& opts) {
  ConvergenceSpec spec;
  spec.f = f;
  spec.p = p;
  spec.schedule = schedule;
  return convergence_suite(spec, opts);
}

}  // namespace bintail
