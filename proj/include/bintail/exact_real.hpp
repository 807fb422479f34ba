#pragma once

#include <bintail/precision.hpp>

#include <string>

namespace bintail {

// A rational value that is either exact or carries an absolute error bound.
// Decimal results of the high-precision backend are stored as the exact
// dyadic value MPFR produced, so no precision state travels with the value.
class ExactReal {
 public:
  ExactReal() = default;
  ExactReal(long long v) : value_(v) {}
  explicit ExactReal(Rational v) : value_(std::move(v)) {}
  ExactReal(Rational value, Rational err, unsigned digits);

  template <unsigned D>
  static ExactReal from_float(const Float<D>& value, const Float<D>& err) {
    return ExactReal(Rational(value), Rational(err), D);
  }

  bool is_rational() const { return digits_ == 0; }
  const Rational& value() const { return value_; }
  const Rational& error() const { return err_; }
  unsigned digits() const { return digits_; }

  Rational lower() const { return value_ - err_; }
  Rational upper() const { return value_ + err_; }
  bool contains(const Rational& x) const { return lower() <= x && x <= upper(); }

  double to_double() const;
  HighPrecision to_high() const { return HighPrecision(value_); }
  HighPrecision log_value() const;

  // "a/b" for rationals, otherwise a decimal with the requested digits.
  std::string str(int significant = 17) const;
  std::string decimal(int significant = 17) const;

  friend ExactReal operator+(const ExactReal& a, const ExactReal& b);
  friend ExactReal operator-(const ExactReal& a, const ExactReal& b);
  friend ExactReal operator*(const ExactReal& a, const ExactReal& b);
  friend ExactReal operator/(const ExactReal& a, const ExactReal& b);
  ExactReal operator-() const;

  // Ordering that holds for every value inside both error intervals.
  friend bool certainly_less(const ExactReal& a, const ExactReal& b) {
    return a.upper() < b.lower();
  }
  friend bool operator==(const ExactReal& a, const ExactReal& b) {
    return a.value_ == b.value_ && a.err_ == b.err_ && a.digits_ == b.digits_;
  }

 private:
  Rational value_{0};
  Rational err_{0};
  unsigned digits_ = 0;
};

std::string format_decimal(const HighPrecision& v, int significant);
std::string format_double(double v, int significant = 17);

}  // namespace bintail
