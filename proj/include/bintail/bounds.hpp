#pragma once

#include <bintail/params.hpp>

#include <cstdint>
#include <optional>

namespace bintail {

struct Interval {
  double lo;
  double hi;
};

struct RatioBoundSet {
  double L;
  double U;
  // Minimizing a in the definition of U; zero_branch marks the k < kappa1 case.
  std::int64_t branch_a;
  bool zero_branch;
  double kappa1;
};

struct LogValue {
  double log_value;
  double value;
};

LogValue from_log(double log_value);

struct TailBoundSet {
  LogValue b_down;
  LogValue b_up;
  LogValue chernoff;
  LogValue reverse_type;
  LogValue reverse_ash;
  // Present only for k < pn (lower tail) or k > pn (upper tail).
  std::optional<LogValue> ferrante;
};

struct TildeBounds {
  double L_tilde_minus;
  double L_tilde;
  double U_tilde;
  double U_tilde_plus;
};

struct PartialMeanLower {
  double general;
  // Valid only when k <= pn.
  std::optional<double> simple;
  std::optional<double> crude;
};

struct ReverseChernoff {
  double type_bound;
  double ash_bound;
};

struct UResult {
  double U;
  std::int64_t branch_a;
};

double relative_entropy(double f, double p);
double odds_ratio(double f, double p);

double ratio_lower_L(double n, double k, double p);
double kappa1(double n, double p);
double V(double n, double k, double p, double a);
UResult ratio_upper_U(double n, double k, double p);
RatioBoundSet ratio_bounds(const BinomialParams& params);

double chernoff_upper(const BinomialParams& params);
ReverseChernoff reverse_chernoff_bounds(const BinomialParams& params);

double phi(double n, double k);
double varphi(double n, double k);
Interval varphi_band(double n, double k);

TildeBounds tilde_bounds(const BinomialParams& params);
TailBoundSet tail_bounds(const BinomialParams& params);
double ferrante_upper(const BinomialParams& params);
double large_dev_limit(double f, double p);
double moderate_dev_limit(double p);

RatioBoundSet upper_tail_ratio_bounds(const BinomialParams& params);
TailBoundSet upper_tail_bounds(const BinomialParams& params);
TildeBounds hat_bounds(const BinomialParams& params);
// sqrt(f/(2 pi (1-f))) q/(f-p), the upper-tail limit constant.
double upper_large_dev_limit(double f, double p);

PartialMeanLower partial_mean_lower(const BinomialParams& params);
Interval successive_ratio_bounds(const BinomialParams& params);

}  // namespace bintail
