#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace gauss_rinv {

// Arbitrary-precision rational with expression templates off so that it
// behaves as a plain value type inside Eigen containers.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

// Thrown for malformed rational literals such as "1/0" or "0.5".
class RationalParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Accepts "[+-]digits" or "[+-]digits/digits" with a nonzero denominator.
Rational parse_rational(std::string_view text);

// Canonical form: "p" for integers, "p/q" otherwise (q > 0, gcd 1).
std::string to_string(const Rational& r);

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// Exact value of a finite double.
Rational from_double(double x);

Rational factorial(unsigned k);
Rational binomial(unsigned n, unsigned k);
Rational pow(const Rational& base, int exponent);

}  // namespace gauss_rinv
