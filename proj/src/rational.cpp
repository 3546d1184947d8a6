#include "gauss_rinv/rational.hpp"

#include <cmath>

namespace gauss_rinv {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '+' || body.front() == '-')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw RationalParseError("malformed rational \"" + std::string(text) + "\"");
  }
  const Integer n(std::string{num});
  const Integer d(std::string{den});
  if (d == 0) {
    throw RationalParseError("zero denominator in \"" + std::string(text) + "\"");
  }
  Rational r(n, d);  // the (num, den) constructor canonicalizes
  return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& r) {
  const Integer n = boost::multiprecision::numerator(r);
  const Integer d = boost::multiprecision::denominator(r);
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

Rational from_double(double x) {
  if (!std::isfinite(x)) throw std::domain_error("from_double: non-finite value");
  return Rational(x);
}

Rational factorial(unsigned k) {
  Integer acc = 1;
  for (unsigned i = 2; i <= k; ++i) acc *= i;
  return Rational(acc);
}

Rational binomial(unsigned n, unsigned k) {
  if (k > n) return Rational(0);
  Integer acc = 1;
  for (unsigned i = 1; i <= k; ++i) {
    acc *= n - k + i;
    acc /= i;
  }
  return Rational(acc);
}

Rational pow(const Rational& base, int exponent) {
  Rational acc = 1;
  Rational b = exponent >= 0 ? base : Rational(1) / base;
  unsigned e = static_cast<unsigned>(exponent >= 0 ? exponent : -exponent);
  while (e != 0) {
    if (e & 1U) acc *= b;
    b *= b;
    e >>= 1U;
  }
  return acc;
}

}  // namespace gauss_rinv
