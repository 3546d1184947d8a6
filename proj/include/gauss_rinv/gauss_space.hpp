#pragma once

#include "gauss_rinv/polynomial.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gauss_rinv {

/// The Gaussian weight phi(x) = lambda |x - center|^2.
struct WeightSpec {
  int dim = 1;
  Rational lambda = 1;
  std::vector<Rational> center;

  WeightSpec() : center(1, Rational(0)) {}
  WeightSpec(int n, Rational lam, std::vector<Rational> x0);

  /// lambda = 1, center = 0: the weight |x|^2.
  static WeightSpec unit(int n);

  bool is_unit() const;
  Polynomial as_polynomial() const;

  bool operator==(const WeightSpec&) const = default;
};

/// Recognizes a polynomial of the exact form lambda |x - x0|^2 with
/// lambda > 0. Anything else (cross terms, unequal diagonal, stray
/// constant) yields nullopt.
std::optional<WeightSpec> recognize_gaussian_weight(const Polynomial& phi);

/// Thrown when quantities carrying different Gaussian units are combined.
class UnitMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An exact weighted integral: value * unit^power with
/// unit = pi^{n/2} lambda^{-n/2}.
///
/// Products of two weighted integrals (as in Cauchy-Schwarz type
/// inequalities) carry power 2. Mixing units is an error.
struct GaussianScalar {
  Rational value = 0;
  int dim = 1;
  Rational lambda = 1;
  int power = 1;

  GaussianScalar() = default;
  GaussianScalar(Rational v, int n, Rational lam, int pw = 1)
      : value(std::move(v)), dim(n), lambda(std::move(lam)), power(pw) {}

  static GaussianScalar zero_like(const GaussianScalar& s) {
    return GaussianScalar(0, s.dim, s.lambda, s.power);
  }

  bool same_unit(const GaussianScalar& o) const {
    return dim == o.dim && lambda == o.lambda && power == o.power;
  }

  /// Exponent of pi in the unit, power * n / 2.
  Rational pi_power() const { return Rational(power * dim, 2); }

  double to_double() const;
  std::string to_string() const;

  GaussianScalar& operator+=(const GaussianScalar& o);
  GaussianScalar& operator-=(const GaussianScalar& o);
  GaussianScalar& operator*=(const Rational& s) {
    value *= s;
    return *this;
  }

  friend GaussianScalar operator+(GaussianScalar a, const GaussianScalar& b) { return a += b; }
  friend GaussianScalar operator-(GaussianScalar a, const GaussianScalar& b) { return a -= b; }
  friend GaussianScalar operator*(GaussianScalar a, const Rational& s) { return a *= s; }
  friend GaussianScalar operator*(const Rational& s, GaussianScalar a) { return a *= s; }
  friend GaussianScalar operator*(const GaussianScalar& a, const GaussianScalar& b);

  friend bool operator==(const GaussianScalar& a, const GaussianScalar& b);
  friend bool operator<(const GaussianScalar& a, const GaussianScalar& b);
  friend bool operator<=(const GaussianScalar& a, const GaussianScalar& b) { return !(b < a); }
  friend bool operator>(const GaussianScalar& a, const GaussianScalar& b) { return b < a; }
  friend bool operator>=(const GaussianScalar& a, const GaussianScalar& b) { return !(a < b); }
};

/// a / b for same-unit scalars; the units cancel so the ratio is rational.
Rational ratio(const GaussianScalar& a, const GaussianScalar& b);

/// Coefficients over the weight-adapted tensor Hermite basis
///
///   h_m(x) = prod_j lambda^{-m_j/2} H_{m_j}(sqrt(lambda) (x_j - x0_j)),
///
/// H_k the physicists' Hermite polynomials. The lambda^{-m/2} prefactor keeps
/// every h_m a polynomial with rational coefficients; for the unit weight
/// h_m is exactly the product of H_{m_j}(x_j).
struct HermiteExpansion {
  WeightSpec weight;
  std::map<MultiIndex, Rational, GrlexLess> coeffs;

  Rational coefficient(const MultiIndex& m) const {
    auto it = coeffs.find(m);
    return it == coeffs.end() ? Rational(0) : it->second;
  }
  void add(const MultiIndex& m, const Rational& c);
  int degree() const { return coeffs.empty() ? -1 : coeffs.rbegin()->first.degree(); }
};

/// h_k for a single axis as a univariate coefficient list in x (index = power).
std::vector<Rational> hermite_axis_polynomial(int k, const Rational& lambda,
                                              const Rational& center);

/// The basis function h_m as a polynomial in x.
Polynomial hermite_basis_polynomial(const MultiIndex& m, const WeightSpec& w);

/// ||h_m||^2 in units of pi^{n/2} lambda^{-n/2}: prod_j 2^{m_j} m_j! / lambda^{m_j}.
Rational basis_norm_sq(const MultiIndex& m, const Rational& lambda);

HermiteExpansion monomial_to_hermite(const Polynomial& p, const WeightSpec& w);
Polynomial hermite_to_monomial(const HermiteExpansion& e);

GaussianScalar inner_product(const HermiteExpansion& a, const HermiteExpansion& b);
GaussianScalar inner_product(const Polynomial& p, const Polynomial& q, const WeightSpec& w);
GaussianScalar norm_sq(const Polynomial& p, const WeightSpec& w);
GaussianScalar norm_sq(const HermiteExpansion& e);

/// sum_j ||v_j||^2 for a vector field (e.g. a gradient).
GaussianScalar norm_sq(const std::vector<Polynomial>& field, const WeightSpec& w);

}  // namespace gauss_rinv
