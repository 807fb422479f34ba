#pragma once

#include <bintail/precision.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bintail {

// Thrown when an operation is called outside the range its bound is stated for.
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A success probability in (0, 1), held either as an exact rational or as a
// binary64 value. A binary64 value is itself a dyadic rational, which the
// exact comparisons below use.
class Probability {
 public:
  static Probability rational(const Rational& r);
  static Probability ratio(long long num, long long den) { return rational(Rational(num, den)); }
  static Probability binary64(double p);
  // Accepts "a/b", an integer-free decimal such as "0.3", or any strtod form.
  // Decimal text becomes a binary64 value and is routed to the decimal backend.
  static Probability parse(std::string_view text);

  bool is_rational() const { return rational_.has_value(); }
  const Rational& exact() const;
  Rational as_rational() const { return rational_ ? *rational_ : Rational(approx_); }
  double value() const { return approx_; }
  HighPrecision high() const { return HighPrecision(as_rational()); }
  Probability complement() const;
  std::string str() const;

  friend bool operator==(const Probability& a, const Probability& b) {
    return a.rational_ == b.rational_ && a.approx_ == b.approx_;
  }

 private:
  std::optional<Rational> rational_;
  double approx_ = 0.5;
};

struct BinomialParams {
  BinomialParams(std::int64_t n_, std::int64_t k_, Probability p_);
  BinomialParams(std::int64_t n_, std::int64_t k_, double p_)
      : BinomialParams(n_, k_, Probability::binary64(p_)) {}

  std::int64_t n;
  std::int64_t k;
  Probability p;

  double q() const { return 1.0 - p.value(); }
  double f() const { return static_cast<double>(k) / static_cast<double>(n); }
  // Sign of k - pn, computed exactly.
  int compare_k_to_mean() const;
  BinomialParams reflected() const { return BinomialParams(n, n - k, p.complement()); }
};

}  // namespace bintail
