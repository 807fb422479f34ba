#include "suite_support.hpp"

#include <bintail/mckay.hpp>

#include <cmath>

namespace bintail::detail {

namespace fm = formula;

namespace {

constexpr Rel lt = Rel::less;
constexpr Rel le = Rel::less_eq;
constexpr Rel eq = Rel::equal;

// A tail point in lower-tail orientation. The upper tail at (n, k, p) is the
// lower tail at (n, n-k, 1-p); exact values still come from the original row.
struct Side {
  std::int64_t n, k;
  HighPrecision pH, qH;
  double pd, qd;
  int cmp;
  HighPrecision ratio;
  HighPrecision log_tail;
  std::string prefix;

  template <class R>
  R p() const {
    if constexpr (is_binary64<R>) return pd; else return pH;
  }
  template <class R>
  R q() const {
    if constexpr (is_binary64<R>) return qd; else return qH;
  }
};

Side lower_side(const RowCtx& r, std::int64_t k) {
  return {r.n, k, r.pH, r.qH, r.pd, r.qd, r.cmp(k), r.row.lower_over_pmf(k), r.row.log_lower(k), ""};
}

Side upper_side(const RowCtx& r, std::int64_t k) {
  return {r.n,  r.n - k, r.qH, r.pH, r.qd, r.pd, -r.cmp(k), r.row.upper_over_pmf(k), r.row.log_upper(k),
          "upper "};
}

template <class R>
R ln(const R& x) {
  using std::log;
  return log(x);
}

template <class R>
R lgam(const R& x) {
  using std::lgamma;
  return lgamma(x);
}

void ratio_chains(Checker& c, const GridPoint& pt, const Side& s) {
  const std::string name = s.prefix + "ratio bounds";
  if (s.k == 0) {
    c.chain<5>(pt, name, {"1", "L", "B/b", "U", "2L"}, {le, le, le, lt}, Domain::linear, [&](auto tag) {
      using R = typename decltype(tag)::type;
      return std::array<R, 5>{R(1), R(1), cv<R>(s.ratio), R(1), R(2)};
    });
    return;
  }
  c.chain<5>(pt, name, {"1", "L", "B/b", "U", "2L"}, {lt, lt, lt, lt}, Domain::linear, [&](auto tag) {
    using R = typename decltype(tag)::type;
    R n(s.n), k(s.k), p = s.p<R>(), q = s.q<R>();
    R L = fm::lower_L(n, k, p, q);
    return std::array<R, 5>{R(1), L, cv<R>(s.ratio), fm::upper_U(n, k, p, q).value, R(2 * L)};
  });
  if (s.cmp < 0) {
    c.chain<6>(pt, s.prefix + "ratio bounds below the mean", {"1", "L", "B/b", "U", "V0", "(1-f)p/(p-f)"},
               {lt, lt, lt, le, lt}, Domain::linear, [&](auto tag) {
                 using R = typename decltype(tag)::type;
                 R n(s.n), k(s.k), p = s.p<R>(), q = s.q<R>();
                 R f = k / n;
                 return std::array<R, 6>{R(1), fm::lower_L(n, k, p, q), cv<R>(s.ratio),
                                         fm::upper_U(n, k, p, q).value, fm::V(n, k, p, R(0)),
                                         fm::ratio_limit(f, p)};
               });
  }
}

// Logs of the quantities shared by the tail chains at one point.
template <class R>
struct TailLogs {
  R ln_n, ln_k, ln_m, nd, L, U, log_tail, log_kk;
  fm::TildeLogs<R> t;
};

template <class R>
TailLogs<R> tail_logs(const Side& s) {
  R n(s.n), k(s.k), p = s.p<R>(), q = s.q<R>();
  TailLogs<R> o;
  o.ln_n = ln(n);
  o.ln_k = ln(k);
  o.ln_m = ln(R(n - k));
  o.nd = fm::scaled_entropy(n, k, p, q);
  o.L = fm::lower_L(n, k, p, q);
  o.U = fm::upper_U(n, k, p, q).value;
  o.log_tail = cv<R>(s.log_tail);
  // ln(k^k / (e^k k!))
  o.log_kk = k * o.ln_k - k - lgam(R(k + 1));
  o.t = fm::tilde_logs(n, k, o.L, o.U);
  return o;
}

void theorem2_chains(Checker& c, const GridPoint& pt, const Side& s) {
  c.chain<3>(pt, s.prefix + "pmf-scaled tail bounds",
             {"L sqrt(n/(8k(n-k))) e^-nD", "B", "U sqrt(n/(2 pi k(n-k))) e^-nD"}, {lt, lt}, Domain::log,
             [&](auto tag) {
               using R = typename decltype(tag)::type;
               auto o = tail_logs<R>(s);
               R half = (o.ln_n - o.ln_k - o.ln_m) / 2;
               return std::array<R, 3>{half - ln(R(8)) / 2 + ln(o.L) - o.nd, o.log_tail,
                                       half - ln_sqrt_2pi_v<R>() + ln(o.U) - o.nd};
             });
  c.chain<4>(pt, s.prefix + "tail bounds", {"Bdown", "B", "Bup", "89/44 Bdown"}, {lt, lt, lt}, Domain::log,
             [&](auto tag) {
               using R = typename decltype(tag)::type;
               auto o = tail_logs<R>(s);
               R down = o.t.l_minus - o.ln_n / 2 - o.nd;
               return std::array<R, 4>{down, o.log_tail, o.t.u_plus - o.ln_n / 2 - o.nd,
                                       down + ln(R(R(89) / 44))};
             });
  {
    auto o = tail_logs<double>(s);
    c.metric(s.prefix + "max Bup/Bdown", std::exp(o.t.u_plus - o.t.l_minus), pt, +1);
  }
  if (s.cmp < 0) {
    c.chain<3>(pt, s.prefix + "tail bounds below the mean", {"B", "Bup", "Ferrante"}, {lt, lt}, Domain::log,
               [&](auto tag) {
                 using R = typename decltype(tag)::type;
                 auto o = tail_logs<R>(s);
                 R n(s.n), k(s.k), p = s.p<R>();
                 R f = k / n;
                 R ferr = ln(R((1 - f) / (2 * pi_v<R>() * f))) / 2 + ln(R(p / (p - f))) - o.ln_n / 2 - o.nd;
                 return std::array<R, 3>{o.log_tail, o.t.u_plus - o.ln_n / 2 - o.nd, ferr};
               });
  }
}

void theorem5_chains(Checker& c, const GridPoint& pt, const Side& s) {
  c.chain<5>(pt, s.prefix + "tail bounds via k^k/(e^k k!)",
             {"1/(e sqrt k)", "L/(e sqrt k)", "k^k L/(e^k k!)", "B e^nD", "sqrt(n/(n-k)) k^k U/(e^k k!)"},
             {lt, le, lt, lt}, Domain::log, [&](auto tag) {
               using R = typename decltype(tag)::type;
               auto o = tail_logs<R>(s);
               R a0 = -1 - o.ln_k / 2;
               return std::array<R, 5>{a0, a0 + ln(o.L), o.log_kk + ln(o.L), o.log_tail + o.nd,
                                       (o.ln_n - o.ln_m) / 2 + o.log_kk + ln(o.U)};
             });
  c.chain<5>(pt, s.prefix + "tail bounds via sqrt(k(n-k)/n)",
             {"1/sqrt8", "L/sqrt8", "sqrt(k(n-k)/n) B e^nD", "U/sqrt(2 pi)", "2L/sqrt(2 pi)"}, {lt, lt, lt, lt},
             Domain::log, [&](auto tag) {
               using R = typename decltype(tag)::type;
               auto o = tail_logs<R>(s);
               R a0 = -ln(R(8)) / 2;
               return std::array<R, 5>{a0, a0 + ln(o.L), (o.ln_k + o.ln_m - o.ln_n) / 2 + o.log_tail + o.nd,
                                       ln(o.U) - ln_sqrt_2pi_v<R>(), ln(R(2 * o.L)) - ln_sqrt_2pi_v<R>()};
             });
  c.chain<6>(pt, s.prefix + "tilde bounds", {"Lt-", "Lt", "sqrt(n) B e^nD", "Ut", "Ut+", "89/44 Lt-"},
             {lt, lt, lt, lt, lt}, Domain::log, [&](auto tag) {
               using R = typename decltype(tag)::type;
               auto o = tail_logs<R>(s);
               return std::array<R, 6>{o.t.l_minus, o.t.l, o.ln_n / 2 + o.log_tail + o.nd, o.t.u, o.t.u_plus,
                                       o.t.l_minus + ln(R(R(89) / 44))};
             });
  if (s.cmp < 0) {
    c.chain<4>(pt, s.prefix + "tilde bounds below the mean",
               {"sqrt(n) B e^nD", "Ut", "Ut+", "sqrt((1-f)/(2 pi f)) p/(p-f)"}, {lt, lt, lt}, Domain::log,
               [&](auto tag) {
                 using R = typename decltype(tag)::type;
                 auto o = tail_logs<R>(s);
                 R n(s.n), k(s.k), p = s.p<R>();
                 R f = k / n;
                 R lim = ln(R((1 - f) / (2 * pi_v<R>() * f))) / 2 + ln(R(p / (p - f)));
                 return std::array<R, 4>{o.ln_n / 2 + o.log_tail + o.nd, o.t.u, o.t.u_plus, lim};
               });
  }
}

// Double-precision Mills ratio Y(x) = sqrt(2 pi) e^{x^2/2} Phi(-x); only used
// on the fast path, where thin margins are rechecked with the certified oracle.
double mills_fast(double x) {
  if (x < 5) return std::sqrt(pi_v<double>() / 2) * std::exp(x * x / 2) * std::erfc(x / std::sqrt(2.0));
  // Y(x) = 1/(x + 1/(x + 2/(x + 3/(x + ...))))
  double t = x;
  for (int j = 80; j >= 1; --j) t = x + j / t;
  return 1 / t;
}

template <class R>
R mills(const R& x) {
  if constexpr (is_binary64<R>)
    return mills_fast(x);
  else
    return mills_ratio(x, HighPrecision("1e-45")).to_high();
}

void mckay_chains(Checker& c, const GridPoint& pt, const Side& s, bool upper) {
  // In lower-tail orientation both McKay brackets read the same.
  if (upper) {
    c.chain<5>(pt, "McKay ratio bounds",
               {"k sqrt(q/(pn)) Y", "Bbar/b", "k sqrt(q/(pn)) Y e^E", "k sqrt(q/(pn)) ups e^E",
                "2 e^1.5 k sqrt(q/(pn)) ell"},
               {le, le, le, le}, Domain::log, [&](auto tag) {
                 using R = typename decltype(tag)::type;
                 // Back to the original orientation: k = n - s.k, p = s.q.
                 R n(s.n), k(s.n - s.k), p = s.q<R>(), q = s.p<R>();
                 R x = fm::mckay_x(n, k, p, q), E = fm::mckay_E(n, k, p, q);
                 R pre = ln(k) + ln(R(q / (p * n))) / 2;
                 return std::array<R, 5>{pre + ln(mills(x)), ln(cv<R>(s.ratio)), pre + ln(mills(x)) + E,
                                         pre + ln(fm::upsilon_scaled(x)) + E,
                                         ln(R(2)) + R(3) / 2 + pre + ln(fm::ell_scaled(x))};
               });
  }
  const std::string name = upper ? "McKay upper-tail bounds" : "McKay lower-tail bounds";
  c.chain<5>(pt, name, {"phi- ell e^-nD", "phi- Y e^-nD", "tail", "phi+ Y e^E e^-nD", "phi+ ups e^E e^-nD"},
             {le, lt, lt, le}, Domain::log, [&](auto tag) {
               using R = typename decltype(tag)::type;
               R n(s.n), k(s.k), p = s.p<R>(), q = s.q<R>();
               R m = n - k;
               R pre = ln(R(p * m / (q * k))) / 2;
               R x = fm::mckay_x(n, k, p, q), E = fm::mckay_E(n, k, p, q);
               R nd = fm::scaled_entropy(n, k, p, q);
               R lm = pre + fm::log_varphi_minus(n, k) - nd, lp = pre + fm::log_varphi_plus(n, k) - nd;
               return std::array<R, 5>{lm + ln(fm::ell_scaled(x)), lm + ln(mills(x)), cv<R>(s.log_tail),
                                       lp + ln(mills(x)) + E, lp + ln(fm::upsilon_scaled(x)) + E};
             });
  c.chain<2>(pt, "McKay exponent", {"E", "3/2"}, {le}, Domain::linear, [&](auto tag) {
    using R = typename decltype(tag)::type;
    R n(s.n), k(s.k);
    return std::array<R, 2>{fm::mckay_E(n, k, s.p<R>(), s.q<R>()), R(R(3) / 2)};
  });
  c.chain<3>(pt, "Mills ratio bracket", {"ell~(x)", "Y(x)", "ups~(x)"}, {lt, lt}, Domain::linear,
             [&](auto tag) {
               using R = typename decltype(tag)::type;
               R x = fm::mckay_x(R(s.n), R(s.k), s.p<R>(), s.q<R>());
               return std::array<R, 3>{fm::ell_scaled(x), mills(x), fm::upsilon_scaled(x)};
             });
  c.chain<2>(pt, "McKay bracket width", {"width", "2 e^(3929/2600)"}, {le}, Domain::log, [&](auto tag) {
    using R = typename decltype(tag)::type;
    R n(s.n), k(s.k), p = s.p<R>(), q = s.q<R>();
    R x = fm::mckay_x(n, k, p, q);
    R w = fm::log_varphi_plus(n, k) - fm::log_varphi_minus(n, k) + ln(fm::upsilon_scaled(x)) -
          ln(fm::ell_scaled(x)) + fm::mckay_E(n, k, p, q);
    return std::array<R, 2>{w, ln(R(2)) + R(3929) / 2600};
  });
  double n = s.n, k = s.k;
  double x = fm::mckay_x(n, k, s.pd, s.qd), E = fm::mckay_E(n, k, s.pd, s.qd);
  double w = fm::log_varphi_plus(n, k) - fm::log_varphi_minus(n, k) + std::log(fm::upsilon_scaled(x)) -
             std::log(fm::ell_scaled(x)) + E;
  c.metric("max McKay E", E, pt, +1);
  c.metric("max McKay bracket width", std::exp(w), pt, +1);
}

// Ranking of the McKay ratio bracket against ours along the upper tail at
// n = 10^4, p = 1/2; the ranking should flip once, near f*.
void crossover_check(Checker& c) {
  const std::int64_t n = 10000;
  const double p = 0.5, q = 0.5;
  const double f_star = crossover_f_star(p).f_star;
  Table t;
  t.columns = {"k", "f", "log_ours", "log_mckay", "tighter"};
  std::vector<double> flips;
  int prev = 0;
  for (std::int64_t k = n / 2 + 1; k <= n - 1; ++k) {
    double m = static_cast<double>(n - k);
    double L = fm::lower_L<double>(n, m, q, p);
    double U = fm::upper_U<double>(n, m, q, p).value;
    double ours = std::log(U / L);
    double mckay = fm::mckay_E<double>(n, k, p, q);
    int side = ours < mckay ? +1 : -1;
    bool flipped = prev != 0 && side != prev;
    if (flipped) flips.push_back(static_cast<double>(k) / n);
    prev = side;
    if (k % 250 == 0 || flipped)
      t.rows.push_back({std::to_string(k), format_double(static_cast<double>(k) / n), format_double(ours),
                        format_double(mckay), side > 0 ? "ours" : "mckay"});
  }
  bool ok = flips.size() == 1 && std::abs(flips[0] - f_star) < 0.01;
  std::string detail = "f*=" + format_double(f_star) + " flips=" + std::to_string(flips.size());
  if (!flips.empty()) detail += " first_flip_f=" + format_double(flips[0]);
  c.check("McKay/ours ranking flips once within 0.01 of f* at n=10000, p=1/2", ok, detail);
  c.summary().tables.push_back(std::move(t));
}

}  // namespace

CheckSummary suite_theorem1(const GridSpec& grid, const ValidatorOptions& opts) {
  return over_np("theorem1", grid, opts, [&](Checker& c, std::int64_t n, std::size_t, const Rational& p) {
    RowCtx r(n, p);
    auto kr = k_range(grid.k_rule, n, p, {0, r.floor_pn});
    for (std::int64_t k = kr.lo; k <= kr.hi; ++k) {
      c.count_point();
      ratio_chains(c, point_npk(n, k, p), lower_side(r, k));
    }
  });
}

CheckSummary suite_theorem2(const GridSpec& grid, const ValidatorOptions& opts) {
  return over_np("theorem2", grid, opts, [&](Checker& c, std::int64_t n, std::size_t, const Rational& p) {
    RowCtx r(n, p);
    auto kr = k_range(grid.k_rule, n, p, {1, std::min(r.floor_pn, n - 1)});
    for (std::int64_t k = kr.lo; k <= kr.hi; ++k) {
      c.count_point();
      theorem2_chains(c, point_npk(n, k, p), lower_side(r, k));
    }
  });
}

CheckSummary suite_theorem5_2(const GridSpec& grid, const ValidatorOptions& opts) {
  return over_np("theorem5_2", grid, opts, [&](Checker& c, std::int64_t n, std::size_t, const Rational& p) {
    RowCtx r(n, p);
    auto kr = k_range(grid.k_rule, n, p, {1, std::min(r.floor_pn, n - 1)});
    for (std::int64_t k = kr.lo; k <= kr.hi; ++k) {
      c.count_point();
      theorem5_chains(c, point_npk(n, k, p), lower_side(r, k));
    }
  });
}

CheckSummary suite_upper_tail(const GridSpec& grid, const ValidatorOptions& opts) {
  return over_np("upper_tail", grid, opts, [&](Checker& c, std::int64_t n, std::size_t, const Rational& p) {
    RowCtx r(n, p);
    auto kr = k_range(grid.k_rule, n, p, {r.ceil_pn(), n});
    for (std::int64_t k = kr.lo; k <= kr.hi; ++k) {
      c.count_point();
      GridPoint pt = point_npk(n, k, p);
      Side s = upper_side(r, k);
      ratio_chains(c, pt, s);
      if (k >= 1 && k <= n - 1) {
        theorem2_chains(c, pt, s);
        theorem5_chains(c, pt, s);
      }
    }
  });
}

CheckSummary suite_partial_mean(const GridSpec& grid, const ValidatorOptions& opts) {
  return over_np("partial_mean", grid, opts, [&](Checker& c, std::int64_t n, std::size_t, const Rational& p) {
    RowCtx r(n, p);
    auto kr = k_range(grid.k_rule, n, p, {0, n});
    for (std::int64_t k = kr.lo; k <= kr.hi; ++k) {
      c.count_point();
      GridPoint pt = point_npk(n, k, p);
      const Rational mu = r.row.partial_mean(k);
      const Rational ratio = r.row.lower(k) / r.row.pmf(k);
      c.exact_relation(pt, "partial mean range", "k+1-B/b", Rational(k + 1) - ratio, k == 0 ? le : lt, "mu", mu);
      c.exact_relation(pt, "partial mean range", "mu", mu, k == n ? le : lt, "pn", Rational(n) * p);
      const HighPrecision muH(mu);
      c.chain<2>(pt, "partial mean lower bound", {"k+1-L(n-1,k,p)", "mu"}, {le}, Domain::linear, [&](auto tag) {
        using R = typename decltype(tag)::type;
        using std::sqrt;
        R nn(n), kk(k), pp = r.pr<R>(), qq = r.qr<R>();
        R s = pp * nn - kk + qq;
        return std::array<R, 2>{R((pp * nn + kk + qq - sqrt(s * s + 4 * qq * kk)) / 2), cv<R>(muH)};
      });
      if (k <= r.floor_pn) {
        c.chain<3>(pt, "partial mean lower bound below the mean",
                   {"k-sqrt(qk)", "k+q/2-sqrt(q(4k+q))/2", "mu"}, {le, le}, Domain::linear, [&](auto tag) {
                     using R = typename decltype(tag)::type;
                     using std::sqrt;
                     R kk(k), qq = r.qr<R>();
                     return std::array<R, 3>{R(kk - sqrt(qq * kk)), R(kk + qq / 2 - sqrt(qq * (4 * kk + qq)) / 2),
                                             cv<R>(muH)};
                   });
      }
    }
  });
}

CheckSummary suite_successive_ratio(const GridSpec& grid, const ValidatorOptions& opts) {
  return over_np("successive_ratio", grid, opts, [&](Checker& c, std::int64_t n, std::size_t, const Rational& p) {
    RowCtx r(n, p);
    BinomialRow next(n + 1, p);
    auto kr = k_range(grid.k_rule, n, p, {0, n});
    for (std::int64_t k = kr.lo; k <= kr.hi; ++k) {
      c.count_point();
      GridPoint pt = point_npk(n, k, p);
      const Rational B = r.row.lower(k), B1 = next.lower(k);
      const Rational ratio = B / B1;
      const Rational mu1 = next.partial_mean(k);
      const Rational n1(n + 1);
      c.exact_relation(pt, "successive ratio identity", "B_n/B_(n+1)", ratio, eq, "(n+1-mu_(n+1))/((n+1)q)",
                       (n1 - mu1) / (n1 * r.q));
      c.exact_relation(pt, "ratio/partial-mean identity", "B/b", B / r.row.pmf(k), eq,
                       "p(n+1-mu_(n+1))/(p(n+1)-mu_(n+1))", r.p * (n1 - mu1) / (r.p * n1 - mu1));
      // Adding one trial (m = 1).
      const Rational pmf_ratio = next.pmf(k) / r.row.pmf(k);
      c.exact_relation(pt, "one more trial", "q", r.q, le, "B_(n+1)/B_n", B1 / B);
      c.exact_relation(pt, "one more trial", "B_(n+1)/B_n", B1 / B, le, "b_(n+1)/b_n", pmf_ratio);
      c.exact_relation(pt, "one more trial", "b_(n+1)/b_n", pmf_ratio, le, "q(n+1)/(n+1-k)",
                       r.q * n1 / (n1 - k));
      const HighPrecision ratioH(ratio);
      c.chain<3>(pt, "successive ratio bounds", {"(n-k+1)/((n+1)q)", "B_n/B_(n+1)", "(n-k+L)/((n+1)q)"},
                 {le, le}, Domain::linear, [&](auto tag) {
                   using R = typename decltype(tag)::type;
                   R nn(n), kk(k), pp = r.pr<R>(), qq = r.qr<R>();
                   R L = k == 0 ? R(1) : fm::lower_L(nn, kk, pp, qq);
                   R den = (nn + 1) * qq;
                   return std::array<R, 3>{R((nn - kk + 1) / den), cv<R>(ratioH), R((nn - kk + L) / den)};
                 });
      if (k <= r.floor_pn) {
        c.chain<3>(pt, "successive ratio bounds below the mean",
                   {"B_n/B_(n+1)", "(n-k+1+k sqrt(qk)/(pn))/((n+1)q)", "(n-k+1+sqrt(qk))/((n+1)q)"}, {le, le},
                   Domain::linear, [&](auto tag) {
                     using R = typename decltype(tag)::type;
                     using std::sqrt;
                     R nn(n), kk(k), pp = r.pr<R>(), qq = r.qr<R>();
                     R den = (nn + 1) * qq, sq = sqrt(qq * kk);
                     return std::array<R, 3>{cv<R>(ratioH), R((nn - kk + 1 + kk * sq / (pp * nn)) / den),
                                             R((nn - kk + 1 + sq) / den)};
                   });
      }
      if (r.cmp(k) < 0) {
        c.chain<2>(pt, "successive ratio bound strictly below the mean",
                   {"B_n/B_(n+1)", "(n-k+(1-f)p/(p-f))/((n+1)q)"}, {le}, Domain::linear, [&](auto tag) {
                     using R = typename decltype(tag)::type;
                     R nn(n), kk(k), pp = r.pr<R>(), qq = r.qr<R>();
                     return std::array<R, 2>{cv<R>(ratioH),
                                             R((nn - kk + fm::ratio_limit(R(kk / nn), pp)) / ((nn + 1) * qq))};
                   });
      }
    }
  });
}

CheckSummary suite_baselines(const GridSpec& grid, const ValidatorOptions& opts) {
  return over_np("baselines", grid, opts, [&](Checker& c, std::int64_t n, std::size_t, const Rational& p) {
    RowCtx r(n, p);
    auto kr = k_range(grid.k_rule, n, p, {1, std::min(r.floor_pn, n - 1)});
    for (std::int64_t k = kr.lo; k <= kr.hi; ++k) {
      c.count_point();
      GridPoint pt = point_npk(n, k, p);
      const HighPrecision log_b = r.row.log_pmf(k), log_B = r.row.log_lower(k);
      auto common = [&](auto tag) {
        using R = typename decltype(tag)::type;
        R nn(n), kk(k), pp = r.pr<R>(), qq = r.qr<R>();
        struct {
          R n, k, p, q, nd, bexp, Bexp, half, log_kk;
        } o{nn, kk, pp, qq, fm::scaled_entropy(nn, kk, pp, qq), R(0), R(0), R(0), R(0)};
        o.bexp = cv<R>(log_b) + o.nd;
        o.Bexp = cv<R>(log_B) + o.nd;
        o.half = (ln(nn) - ln(kk) - ln(R(nn - kk))) / 2;
        o.log_kk = kk * ln(kk) - kk - lgam(R(kk + 1));
        return o;
      };
      c.chain<2>(pt, "pmf identity", {"b e^nD", "phi(n,k)"}, {eq}, Domain::log, [&](auto tag) {
        using R = typename decltype(tag)::type;
        auto o = common(tag);
        return std::array<R, 2>{o.bexp, fm::log_phi(o.n, o.k)};
      });
      c.chain<4>(pt, "pmf bounds via k^k/(e^k k!)",
                 {"1/(e sqrt k)", "k^k/(e^k k!)", "b e^nD", "sqrt(n/(n-k)) k^k/(e^k k!)"}, {le, lt, lt}, Domain::log,
                 [&](auto tag) {
                   using R = typename decltype(tag)::type;
                   auto o = common(tag);
                   return std::array<R, 4>{R(-1 - ln(o.k) / 2), o.log_kk, o.bexp,
                                           R((ln(o.n) - ln(R(o.n - o.k))) / 2 + o.log_kk)};
                 });
      c.chain<4>(pt, "pmf bounds via sqrt(n/(k(n-k)))",
                 {"1/sqrt(2n)", "sqrt(n/(8k(n-k)))", "b e^nD", "sqrt(n/(2 pi k(n-k)))"}, {le, le, lt},
                 Domain::log, [&](auto tag) {
                   using R = typename decltype(tag)::type;
                   auto o = common(tag);
                   return std::array<R, 4>{R(-ln(R(2 * o.n)) / 2), R(o.half - ln(R(8)) / 2), o.bexp,
                                           R(o.half - ln_sqrt_2pi_v<R>())};
                 });
      c.chain<3>(pt, "pmf bounds via phi-/phi+", {"sqrt(n/(k(n-k))) phi-", "b e^nD", "sqrt(n/(k(n-k))) phi+"},
                 {lt, lt}, Domain::log, [&](auto tag) {
                   using R = typename decltype(tag)::type;
                   auto o = common(tag);
                   return std::array<R, 3>{R(o.half + fm::log_varphi_minus(o.n, o.k)), o.bexp,
                                           R(o.half + fm::log_varphi_plus(o.n, o.k))};
                 });
      c.chain<2>(pt, "Chernoff bound", {"B", "e^-nD"}, {lt}, Domain::log, [&](auto tag) {
        using R = typename decltype(tag)::type;
        auto o = common(tag);
        return std::array<R, 2>{o.Bexp, R(0)};
      });
      c.chain<3>(pt, "reverse Chernoff (type)", {"e^-nD/(n+1)", "b", "B"}, {lt, le}, Domain::log, [&](auto tag) {
        using R = typename decltype(tag)::type;
        auto o = common(tag);
        return std::array<R, 3>{R(-ln(R(o.n + 1))), o.bexp, o.Bexp};
      });
      if (r.cmp(k) < 0) {
        c.chain<2>(pt, "Ferrante bound", {"B", "sqrt((1-f)/(2 pi n f)) p/(p-f) e^-nD"}, {lt}, Domain::log,
                   [&](auto tag) {
                     using R = typename decltype(tag)::type;
                     auto o = common(tag);
                     R f = o.k / o.n;
                     return std::array<R, 2>{
                         o.Bexp, R(ln(R((1 - f) / (2 * pi_v<R>() * o.n * f))) / 2 + ln(R(o.p / (o.p - f))))};
                   });
      }
    }
  });
}

CheckSummary suite_mckay(const GridSpec& grid, const ValidatorOptions& opts) {
  CheckSummary out =
      over_np("mckay", grid, opts, [&](Checker& c, std::int64_t n, std::size_t, const Rational& p) {
        RowCtx r(n, p);
        auto up = k_range(grid.k_rule, n, p, {r.floor_pn + 1, n - 1});
        for (std::int64_t k = up.lo; k <= up.hi; ++k) {
          c.count_point();
          mckay_chains(c, point_npk(n, k, p), upper_side(r, k), true);
        }
        std::int64_t hi = r.cmp(r.floor_pn) == 0 ? r.floor_pn - 1 : r.floor_pn;
        auto lo = k_range(grid.k_rule, n, p, {1, hi});
        for (std::int64_t k = lo.lo; k <= lo.hi; ++k) {
          c.count_point();
          mckay_chains(c, point_npk(n, k, p), lower_side(r, k), false);
        }
      });
  Checker c("mckay", opts);
  crossover_check(c);
  out.merge(c.take(), opts.max_reported);
  return out;
}

}  // namespace bintail::detail
