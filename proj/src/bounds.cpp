#include <bintail/bounds.hpp>
#include <bintail/formulas.hpp>

#include <cmath>

namespace bintail {

namespace fm = formula;

namespace {

constexpr const char* kPrecondition = "theorem precondition violated";
constexpr const char* kEndpoint = "degenerate endpoint";

void check_p(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("probability must lie in (0, 1)");
}

struct PQ {
  double p, q;
};

PQ split(const BinomialParams& params) { return {params.p.value(), params.p.complement().value()}; }

void require_lower_tail(const BinomialParams& params) {
  if (params.compare_k_to_mean() > 0) throw PreconditionError(std::string(kPrecondition) + ": k > pn");
}

void require_interior(const BinomialParams& params) {
  if (params.k == 0 || params.k == params.n)
    throw PreconditionError(std::string(kEndpoint) + "; exact pmf available");
}

}  // namespace

LogValue from_log(double log_value) { return {log_value, std::exp(log_value)}; }

double relative_entropy(double f, double p) {
  check_p(p);
  if (!(f >= 0.0 && f <= 1.0)) throw std::invalid_argument("f must lie in [0, 1]");
  return fm::relative_entropy(f, p, 1.0 - p);
}

double odds_ratio(double f, double p) {
  check_p(p);
  if (!(f >= 0.0 && f < 1.0)) throw std::invalid_argument("f must lie in [0, 1)");
  return fm::odds_ratio(f, p, 1.0 - p);
}

double ratio_lower_L(double n, double k, double p) {
  check_p(p);
  if (n < 0 || k < 0) throw PreconditionError("ratio_lower_L requires n >= 0 and k >= 0");
  if (k == 0) return 1.0;
  return fm::lower_L(n, k, p, 1.0 - p);
}

double kappa1(double n, double p) {
  check_p(p);
  if (n < 0) throw PreconditionError("kappa1 requires n >= 0");
  return fm::kappa1(n, p, 1.0 - p);
}

double V(double n, double k, double p, double a) {
  check_p(p);
  if (p * n + p - k + a == 0.0) throw std::domain_error("V: pole at pn + p - k + a = 0");
  return fm::V(n, k, p, a);
}

UResult ratio_upper_U(double n, double k, double p) {
  check_p(p);
  if (n < 0 || k < 0) throw PreconditionError("ratio_upper_U requires n >= 0 and k >= 0");
  if (k > p * n) throw PreconditionError(std::string(kPrecondition) + ": k > pn");
  if (k == 0) return {1.0, 0};
  auto u = fm::upper_U(n, k, p, 1.0 - p);
  return {u.value, u.branch_a};
}

RatioBoundSet ratio_bounds(const BinomialParams& params) {
  require_lower_tail(params);
  auto [p, q] = split(params);
  const double n = static_cast<double>(params.n), k = static_cast<double>(params.k);
  RatioBoundSet out{};
  out.kappa1 = fm::kappa1(n, p, q);
  if (params.k == 0) {
    out.L = out.U = 1.0;
    out.branch_a = 0;
    out.zero_branch = 0.0 < out.kappa1;
    return out;
  }
  out.L = fm::lower_L(n, k, p, q);
  auto u = fm::upper_U(n, k, p, q);
  out.U = u.value;
  out.branch_a = u.branch_a;
  out.zero_branch = u.zero_branch;
  return out;
}

double chernoff_upper(const BinomialParams& params) {
  require_lower_tail(params);
  auto [p, q] = split(params);
  return std::exp(-fm::scaled_entropy<double>(params.n, params.k, p, q));
}

ReverseChernoff reverse_chernoff_bounds(const BinomialParams& params) {
  require_interior(params);
  auto [p, q] = split(params);
  const double n = static_cast<double>(params.n), k = static_cast<double>(params.k);
  double nd = fm::scaled_entropy(n, k, p, q);
  return {std::exp(-nd - std::log(n + 1)), std::exp(0.5 * std::log(n / (8 * k * (n - k))) - nd)};
}

double phi(double n, double k) {
  if (!(n > 0) || k < 0 || k > n) throw PreconditionError("phi requires n > 0 and 0 <= k <= n");
  return std::exp(fm::log_phi(n, k));
}

double varphi(double n, double k) {
  if (!(n > 0) || !(k > 0) || !(k < n)) throw PreconditionError("varphi requires 0 < k < n");
  return std::exp(fm::log_varphi(n, k));
}

Interval varphi_band(double n, double k) {
  if (!(n > 0) || !(k > 0) || !(k < n)) throw PreconditionError("varphi_band requires 0 < k < n");
  return {std::exp(fm::log_varphi_minus(n, k)), std::exp(fm::log_varphi_plus(n, k))};
}

TildeBounds tilde_bounds(const BinomialParams& params) {
  require_interior(params);
  require_lower_tail(params);
  auto [p, q] = split(params);
  const double n = static_cast<double>(params.n), k = static_cast<double>(params.k);
  auto t = fm::tilde_logs(n, k, fm::lower_L(n, k, p, q), fm::upper_U(n, k, p, q).value);
  return {std::exp(t.l_minus), std::exp(t.l), std::exp(t.u), std::exp(t.u_plus)};
}

TailBoundSet tail_bounds(const BinomialParams& params) {
  require_interior(params);
  require_lower_tail(params);
  auto [p, q] = split(params);
  const double n = static_cast<double>(params.n), k = static_cast<double>(params.k);
  const double nd = fm::scaled_entropy(n, k, p, q);
  const double half_ln_n = 0.5 * std::log(n);
  auto t = fm::tilde_logs(n, k, fm::lower_L(n, k, p, q), fm::upper_U(n, k, p, q).value);
  TailBoundSet out{};
  out.b_down = from_log(t.l_minus - half_ln_n - nd);
  out.b_up = from_log(t.u_plus - half_ln_n - nd);
  out.chernoff = from_log(-nd);
  out.reverse_type = from_log(-nd - std::log(n + 1));
  out.reverse_ash = from_log(0.5 * std::log(n / (8 * k * (n - k))) - nd);
  if (params.compare_k_to_mean() < 0) {
    double f = k / n;
    out.ferrante = from_log(0.5 * std::log((1 - f) / (2 * pi_v<double>() * f)) + std::log(p / (p - f)) - nd);
  }
  return out;
}

double ferrante_upper(const BinomialParams& params) {
  if (params.k == 0 || params.compare_k_to_mean() >= 0)
    throw PreconditionError(std::string(kPrecondition) + ": requires 1 <= k < pn");
  return tail_bounds(params).ferrante->value;
}

double large_dev_limit(double f, double p) {
  check_p(p);
  if (!(f > 0 && f < p)) throw PreconditionError("large_dev_limit requires 0 < f < p");
  return std::sqrt((1 - f) / (2 * pi_v<double>() * f)) * p / (p - f);
}

double moderate_dev_limit(double p) {
  check_p(p);
  return std::sqrt(p * (1 - p) / (2 * pi_v<double>()));
}

RatioBoundSet upper_tail_ratio_bounds(const BinomialParams& params) {
  if (params.compare_k_to_mean() < 0) throw PreconditionError(std::string(kPrecondition) + ": k < pn");
  return ratio_bounds(params.reflected());
}

TailBoundSet upper_tail_bounds(const BinomialParams& params) {
  if (params.compare_k_to_mean() < 0) throw PreconditionError(std::string(kPrecondition) + ": k < pn");
  return tail_bounds(params.reflected());
}

TildeBounds hat_bounds(const BinomialParams& params) {
  if (params.compare_k_to_mean() < 0) throw PreconditionError(std::string(kPrecondition) + ": k < pn");
  return tilde_bounds(params.reflected());
}

double upper_large_dev_limit(double f, double p) {
  check_p(p);
  if (!(f > p && f < 1)) throw PreconditionError("upper_large_dev_limit requires p < f < 1");
  return large_dev_limit(1 - f, 1 - p);
}

PartialMeanLower partial_mean_lower(const BinomialParams& params) {
  auto [p, q] = split(params);
  const double n = static_cast<double>(params.n), k = static_cast<double>(params.k);
  PartialMeanLower out{};
  out.general = params.k == 0 ? 0.0 : k + 1 - fm::lower_L(n - 1, k, p, q);
  if (params.compare_k_to_mean() <= 0) {
    out.simple = k + q / 2 - std::sqrt(q * (4 * k + q)) / 2;
    out.crude = k - std::sqrt(q * k);
  }
  return out;
}

Interval successive_ratio_bounds(const BinomialParams& params) {
  auto [p, q] = split(params);
  const double n = static_cast<double>(params.n), k = static_cast<double>(params.k);
  double L = params.k == 0 ? 1.0 : fm::lower_L(n, k, p, q);
  double den = (n + 1) * q;
  return {(n - k + 1) / den, (n - k + L) / den};
}

}  // namespace bintail
