#include <bintail/params.hpp>

#include <bintail/exact_real.hpp>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace bintail {

namespace {

void check_open_unit(const Rational& r) {
  if (r <= 0 || r >= 1) throw std::invalid_argument("probability must lie in (0, 1)");
}

BigInt parse_integer(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty integer in probability");
  for (char c : s)
    if (c < '0' || c > '9') throw std::invalid_argument("malformed probability: " + std::string(s));
  return BigInt(std::string(s));
}

}  // namespace

Probability Probability::rational(const Rational& r) {
  check_open_unit(r);
  Probability p;
  p.rational_ = r;
  p.approx_ = HighPrecision(r).convert_to<double>();
  return p;
}

Probability Probability::binary64(double v) {
  if (!(v > 0.0 && v < 1.0)) throw std::invalid_argument("probability must lie in (0, 1)");
  Probability p;
  p.approx_ = v;
  return p;
}

Probability Probability::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    BigInt num = parse_integer(text.substr(0, slash));
    BigInt den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in probability");
    return rational(Rational(num, den));
  }
  std::string s(text);
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size())
    throw std::invalid_argument("malformed probability: " + s);
  return binary64(v);
}

const Rational& Probability::exact() const {
  if (!rational_) throw std::logic_error("probability is not an exact rational");
  return *rational_;
}

Probability Probability::complement() const {
  if (rational_) return rational(1 - *rational_);
  return binary64(1.0 - approx_);
}

std::string Probability::str() const {
  if (rational_) {
    std::ostringstream os;
    os << numerator(*rational_) << '/' << denominator(*rational_);
    return os.str();
  }
  return format_double(approx_, 17);
}

BinomialParams::BinomialParams(std::int64_t n_, std::int64_t k_, Probability p_)
    : n(n_), k(k_), p(std::move(p_)) {
  if (n < 1) throw std::invalid_argument("n must be a positive integer");
  if (k < 0 || k > n) throw std::invalid_argument("k must satisfy 0 <= k <= n");
}

int BinomialParams::compare_k_to_mean() const {
  Rational diff = Rational(k) - p.as_rational() * n;
  return diff < 0 ? -1 : (diff > 0 ? 1 : 0);
}

}  // namespace bintail
