#include <bintail/exact_real.hpp>

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace bintail {

namespace {

Rational abs_q(const Rational& v) { return v < 0 ? Rational(-v) : v; }

unsigned combine_digits(const ExactReal& a, const ExactReal& b) {
  if (a.is_rational()) return b.digits();
  if (b.is_rational()) return a.digits();
  return std::min(a.digits(), b.digits());
}

}  // namespace

ExactReal::ExactReal(Rational value, Rational err, unsigned digits)
    : value_(std::move(value)), err_(std::move(err)), digits_(digits) {
  if (err_ < 0) throw std::invalid_argument("ExactReal: negative error bound");
  if (err_ == 0) digits_ = 0;
}

double ExactReal::to_double() const { return HighPrecision(value_).convert_to<double>(); }

HighPrecision ExactReal::log_value() const {
  if (value_ <= 0) throw std::domain_error("ExactReal: log of a non-positive value");
  using std::log;
  return log(HighPrecision(value_));
}

std::string ExactReal::str(int significant) const {
  if (is_rational()) {
    std::ostringstream os;
    os << numerator(value_);
    if (denominator(value_) != 1) os << '/' << denominator(value_);
    return os.str();
  }
  return decimal(significant);
}

std::string ExactReal::decimal(int significant) const {
  return format_decimal(HighPrecision(value_), significant);
}

ExactReal operator+(const ExactReal& a, const ExactReal& b) {
  return ExactReal(a.value_ + b.value_, a.err_ + b.err_, combine_digits(a, b));
}

ExactReal operator-(const ExactReal& a, const ExactReal& b) {
  return ExactReal(a.value_ - b.value_, a.err_ + b.err_, combine_digits(a, b));
}

ExactReal ExactReal::operator-() const { return ExactReal(-value_, err_, digits_); }

ExactReal operator*(const ExactReal& a, const ExactReal& b) {
  Rational err = abs_q(a.value_) * b.err_ + abs_q(b.value_) * a.err_ + a.err_ * b.err_;
  return ExactReal(a.value_ * b.value_, std::move(err), combine_digits(a, b));
}

ExactReal operator/(const ExactReal& a, const ExactReal& b) {
  Rational bv = abs_q(b.value_);
  if (bv <= b.err_) throw std::domain_error("ExactReal: divisor interval contains zero");
  Rational err = 0;
  if (!a.is_rational() || !b.is_rational())
    err = (abs_q(a.value_) * b.err_ + bv * a.err_) / (bv * (bv - b.err_));
  return ExactReal(a.value_ / b.value_, std::move(err), combine_digits(a, b));
}

std::string format_decimal(const HighPrecision& v, int significant) {
  std::ostringstream os;
  os << std::setprecision(significant) << v;
  return os.str();
}

std::string format_double(double v, int significant) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", significant, v);
  return buf;
}

}  // namespace bintail
