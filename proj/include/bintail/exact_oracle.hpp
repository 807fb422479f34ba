#pragma once

#include <bintail/exact_real.hpp>
#include <bintail/params.hpp>

#include <cstdint>
#include <vector>

namespace bintail {

struct OracleOptions {
  // Significant digits of the decimal backend; rounded up to 50, 100 or 200.
  unsigned digits = kHighDigits;
  // Above this n the decimal backend replaces exact rationals.
  std::int64_t rational_n_limit = 50000;
};

unsigned precision_tier(unsigned digits);

ExactReal pmf_exact(const BinomialParams& params, const OracleOptions& opts = {});
ExactReal lower_tail_exact(const BinomialParams& params, const OracleOptions& opts = {});
ExactReal upper_tail_exact(const BinomialParams& params, const OracleOptions& opts = {});
ExactReal partial_mean_exact(const BinomialParams& params, const OracleOptions& opts = {});
// B/b and its upper-tail counterpart; cheap for small k since no p^n appears.
ExactReal tail_pmf_ratio_exact(const BinomialParams& params, const OracleOptions& opts = {});
ExactReal upper_tail_pmf_ratio_exact(const BinomialParams& params, const OracleOptions& opts = {});

struct RamanujanSolution {
  ExactReal theta;
  // e^k/2 - theta*k^k/k! - sum_{i<k} k^i/i!, re-evaluated at a wider precision.
  HighPrecision residual;
  HighPrecision residual_bound;
  unsigned digits_used;
};

ExactReal ramanujan_theta(std::int64_t k, const OracleOptions& opts = {});
RamanujanSolution ramanujan_theta_solution(std::int64_t k, const OracleOptions& opts = {});

ExactReal median_deficit_zeta(std::int64_t n, std::int64_t k, const OracleOptions& opts = {});

// Phi(-x) with absolute error at most tol.
ExactReal gaussian_upper_tail(const HighPrecision& x, const HighPrecision& tol,
                              const OracleOptions& opts = {});
ExactReal gaussian_upper_tail(double x, double tol, const OracleOptions& opts = {});
// Phi(-x)/phi(x) = e^{x^2/2} * sqrt(2 pi) * Phi(-x), with relative error at most rel_tol.
ExactReal mills_ratio(const HighPrecision& x, const HighPrecision& rel_tol,
                      const OracleOptions& opts = {});

// Every pmf numerator of one (n, p) row for rational p = a/d:
// b_{n,j} = term(j) / total() with term(j) = C(n,j) a^j (d-a)^(n-j).
class BinomialRow {
 public:
  BinomialRow(std::int64_t n, const Rational& p);

  std::int64_t n() const { return n_; }
  const Rational& p() const { return p_; }
  const BigInt& term(std::int64_t j) const { return terms_[j]; }
  const BigInt& prefix(std::int64_t k) const { return prefix_[k]; }
  const BigInt& moment(std::int64_t k) const { return moment_[k]; }
  const BigInt& total() const { return total_; }
  // sum_{j >= k} term(j)
  BigInt suffix(std::int64_t k) const { return k == 0 ? total_ : BigInt(total_ - prefix_[k - 1]); }

  Rational pmf(std::int64_t k) const { return Rational(terms_[k], total_); }
  Rational lower(std::int64_t k) const { return Rational(prefix_[k], total_); }
  Rational upper(std::int64_t k) const { return Rational(suffix(k), total_); }
  Rational partial_mean(std::int64_t k) const { return Rational(moment_[k], prefix_[k]); }

  HighPrecision log_pmf(std::int64_t k) const;
  HighPrecision log_lower(std::int64_t k) const;
  HighPrecision log_upper(std::int64_t k) const;
  HighPrecision lower_over_pmf(std::int64_t k) const;
  HighPrecision upper_over_pmf(std::int64_t k) const;

 private:
  std::int64_t n_;
  Rational p_;
  std::vector<BigInt> terms_;
  std::vector<BigInt> prefix_;
  std::vector<BigInt> moment_;
  BigInt total_;
  HighPrecision log_total_;
};

}  // namespace bintail
