#include "gauss_rinv/gauss_space.hpp"

#include <cmath>
#include <numbers>

namespace gauss_rinv {

WeightSpec::WeightSpec(int n, Rational lam, std::vector<Rational> x0)
    : dim(n), lambda(std::move(lam)), center(std::move(x0)) {
  if (dim < 1) throw std::invalid_argument("WeightSpec: dimension must be positive");
  if (lambda <= 0) throw std::invalid_argument("WeightSpec: lambda must be positive");
  require_same_dim(dim, static_cast<int>(center.size()), "WeightSpec center");
}

WeightSpec WeightSpec::unit(int n) { return WeightSpec(n, 1, std::vector<Rational>(n, 0)); }

bool WeightSpec::is_unit() const {
  if (lambda != 1) return false;
  for (const auto& c : center) {
    if (c != 0) return false;
  }
  return true;
}

Polynomial WeightSpec::as_polynomial() const {
  Polynomial r(dim);
  for (int j = 0; j < dim; ++j) {
    Polynomial shifted = Polynomial::variable(dim, j) -
                         Polynomial::constant(dim, center[static_cast<std::size_t>(j)]);
    r += shifted * shifted;
  }
  return r * lambda;
}

std::optional<WeightSpec> recognize_gaussian_weight(const Polynomial& phi) {
  const int n = phi.dim();
  const Rational lambda = phi.coefficient([&] {
    MultiIndex m(n);
    m[0] = 2;
    return m;
  }());
  if (lambda <= 0) return std::nullopt;
  std::vector<Rational> center(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const Rational linear = phi.coefficient(MultiIndex::unit(n, j));
    center[static_cast<std::size_t>(j)] = -linear / (2 * lambda);
  }
  WeightSpec w(n, lambda, std::move(center));
  if (!(w.as_polynomial() == phi)) return std::nullopt;
  return w;
}

// --- GaussianScalar -------------------------------------------------------

namespace {

void require_same_unit(const GaussianScalar& a, const GaussianScalar& b, const char* where) {
  if (!a.same_unit(b)) {
    throw UnitMismatch(std::string(where) + ": incompatible Gaussian units (" + a.to_string() +
                       " vs " + b.to_string() + ")");
  }
}

}  // namespace

double GaussianScalar::to_double() const {
  const double exponent = power * dim / 2.0;
  return gauss_rinv::to_double(value) * std::pow(std::numbers::pi, exponent) *
         std::pow(gauss_rinv::to_double(lambda), -exponent);
}

std::string GaussianScalar::to_string() const {
  std::string s = gauss_rinv::to_string(value) + " * pi^(" + gauss_rinv::to_string(pi_power()) + ")";
  if (lambda != 1) {
    s += " * (" + gauss_rinv::to_string(lambda) + ")^(-" + gauss_rinv::to_string(pi_power()) + ")";
  }
  return s;
}

GaussianScalar& GaussianScalar::operator+=(const GaussianScalar& o) {
  require_same_unit(*this, o, "GaussianScalar::+");
  value += o.value;
  return *this;
}

GaussianScalar& GaussianScalar::operator-=(const GaussianScalar& o) {
  require_same_unit(*this, o, "GaussianScalar::-");
  value -= o.value;
  return *this;
}

GaussianScalar operator*(const GaussianScalar& a, const GaussianScalar& b) {
  if (a.dim != b.dim || a.lambda != b.lambda) {
    throw UnitMismatch("GaussianScalar::*: scalars from different weights");
  }
  return GaussianScalar(a.value * b.value, a.dim, a.lambda, a.power + b.power);
}

bool operator==(const GaussianScalar& a, const GaussianScalar& b) {
  require_same_unit(a, b, "GaussianScalar::==");
  return a.value == b.value;
}

bool operator<(const GaussianScalar& a, const GaussianScalar& b) {
  require_same_unit(a, b, "GaussianScalar::<");
  return a.value < b.value;
}

Rational ratio(const GaussianScalar& a, const GaussianScalar& b) {
  require_same_unit(a, b, "ratio");
  if (b.value == 0) throw std::domain_error("ratio: zero denominator");
  return a.value / b.value;
}

// --- Hermite expansions ---------------------------------------------------

void HermiteExpansion::add(const MultiIndex& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = coeffs.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) coeffs.erase(it);
  }
}

std::vector<Rational> hermite_axis_polynomial(int k, const Rational& lambda,
                                              const Rational& center) {
  // h_0 = 1, h_1 = 2(x - c), h_{j+1} = 2(x - c) h_j - (2j / lambda) h_{j-1}.
  std::vector<Rational> prev{Rational(1)};
  if (k == 0) return prev;
  std::vector<Rational> cur{-2 * center, Rational(2)};
  for (int j = 1; j < k; ++j) {
    std::vector<Rational> next(cur.size() + 1, Rational(0));
    for (std::size_t i = 0; i < cur.size(); ++i) {
      next[i + 1] += 2 * cur[i];
      next[i] -= 2 * center * cur[i];
    }
    const Rational c = Rational(2 * j) / lambda;
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= c * prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

Polynomial hermite_basis_polynomial(const MultiIndex& m, const WeightSpec& w) {
  require_same_dim(m.dim(), w.dim, "hermite_basis_polynomial");
  Polynomial r = Polynomial::constant(w.dim, 1);
  for (int j = 0; j < w.dim; ++j) {
    const auto coeffs = hermite_axis_polynomial(m[j], w.lambda, w.center[static_cast<std::size_t>(j)]);
    Polynomial axis(w.dim);
    for (std::size_t e = 0; e < coeffs.size(); ++e) {
      MultiIndex mono(w.dim);
      mono[j] = static_cast<int>(e);
      axis.add_term(mono, coeffs[e]);
    }
    r = r * axis;
  }
  return r;
}

Rational basis_norm_sq(const MultiIndex& m, const Rational& lambda) {
  Rational acc = 1;
  for (int j = 0; j < m.dim(); ++j) {
    const int k = m[j];
    acc *= pow(Rational(2) / lambda, k) * factorial(static_cast<unsigned>(k));
  }
  return acc;
}

namespace {

// Row e holds x^e expanded over h_0..h_e for one axis.
std::vector<std::vector<Rational>> axis_monomial_table(int max_power, const Rational& lambda,
                                                       const Rational& center) {
  // First (x - c)^j via (x - c) h_k = h_{k+1}/2 + (k / lambda) h_{k-1}.
  std::vector<std::vector<Rational>> shifted(static_cast<std::size_t>(max_power) + 1);
  shifted[0] = {Rational(1)};
  for (int j = 0; j < max_power; ++j) {
    const auto& s = shifted[static_cast<std::size_t>(j)];
    std::vector<Rational> next(s.size() + 1, Rational(0));
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (s[k] == 0) continue;
      next[k + 1] += s[k] / 2;
      if (k > 0) next[k - 1] += s[k] * Rational(static_cast<long>(k)) / lambda;
    }
    shifted[static_cast<std::size_t>(j) + 1] = std::move(next);
  }
  if (center == 0) return shifted;

  // x^e = sum_j C(e, j) c^{e-j} (x - c)^j.
  std::vector<std::vector<Rational>> table(static_cast<std::size_t>(max_power) + 1);
  for (int e = 0; e <= max_power; ++e) {
    std::vector<Rational> row(static_cast<std::size_t>(e) + 1, Rational(0));
    for (int j = 0; j <= e; ++j) {
      const Rational factor = binomial(static_cast<unsigned>(e), static_cast<unsigned>(j)) *
                              pow(center, e - j);
      const auto& s = shifted[static_cast<std::size_t>(j)];
      for (std::size_t k = 0; k < s.size(); ++k) row[k] += factor * s[k];
    }
    table[static_cast<std::size_t>(e)] = std::move(row);
  }
  return table;
}

void accumulate_product(const std::vector<const std::vector<Rational>*>& rows, int axis,
                        MultiIndex& index, const Rational& acc, HermiteExpansion& out) {
  if (axis == static_cast<int>(rows.size())) {
    out.add(index, acc);
    return;
  }
  const auto& row = *rows[static_cast<std::size_t>(axis)];
  for (std::size_t k = 0; k < row.size(); ++k) {
    if (row[k] == 0) continue;
    index[axis] = static_cast<int>(k);
    accumulate_product(rows, axis + 1, index, acc * row[k], out);
  }
  index[axis] = 0;
}

}  // namespace

HermiteExpansion monomial_to_hermite(const Polynomial& p, const WeightSpec& w) {
  require_same_dim(p.dim(), w.dim, "monomial_to_hermite");
  HermiteExpansion out{w, {}};
  if (p.is_zero()) return out;

  std::vector<std::vector<std::vector<Rational>>> tables;
  tables.reserve(static_cast<std::size_t>(w.dim));
  for (int j = 0; j < w.dim; ++j) {
    int max_power = 0;
    for (const auto& [m, c] : p.terms()) max_power = std::max(max_power, m[j]);
    tables.push_back(axis_monomial_table(max_power, w.lambda, w.center[static_cast<std::size_t>(j)]));
  }

  std::vector<const std::vector<Rational>*> rows(static_cast<std::size_t>(w.dim));
  MultiIndex index(w.dim);
  for (const auto& [m, c] : p.terms()) {
    for (int j = 0; j < w.dim; ++j) {
      rows[static_cast<std::size_t>(j)] = &tables[static_cast<std::size_t>(j)][static_cast<std::size_t>(m[j])];
    }
    accumulate_product(rows, 0, index, c, out);
  }
  return out;
}

Polynomial hermite_to_monomial(const HermiteExpansion& e) {
  Polynomial r(e.weight.dim);
  for (const auto& [m, c] : e.coeffs) r += hermite_basis_polynomial(m, e.weight) * c;
  return r;
}

GaussianScalar inner_product(const HermiteExpansion& a, const HermiteExpansion& b) {
  if (!(a.weight == b.weight)) throw UnitMismatch("inner_product: expansions over different weights");
  Rational acc = 0;
  const auto& small = a.coeffs.size() <= b.coeffs.size() ? a.coeffs : b.coeffs;
  const auto& large = a.coeffs.size() <= b.coeffs.size() ? b.coeffs : a.coeffs;
  for (const auto& [m, c] : small) {
    auto it = large.find(m);
    if (it == large.end()) continue;
    acc += c * it->second * basis_norm_sq(m, a.weight.lambda);
  }
  return GaussianScalar(acc, a.weight.dim, a.weight.lambda);
}

GaussianScalar inner_product(const Polynomial& p, const Polynomial& q, const WeightSpec& w) {
  require_same_dim(p.dim(), q.dim(), "inner_product");
  return inner_product(monomial_to_hermite(p, w), monomial_to_hermite(q, w));
}

GaussianScalar norm_sq(const HermiteExpansion& e) {
  Rational acc = 0;
  for (const auto& [m, c] : e.coeffs) acc += c * c * basis_norm_sq(m, e.weight.lambda);
  return GaussianScalar(acc, e.weight.dim, e.weight.lambda);
}

GaussianScalar norm_sq(const Polynomial& p, const WeightSpec& w) {
  return norm_sq(monomial_to_hermite(p, w));
}

GaussianScalar norm_sq(const std::vector<Polynomial>& field, const WeightSpec& w) {
  GaussianScalar acc(0, w.dim, w.lambda);
  for (const auto& component : field) acc += norm_sq(component, w);
  return acc;
}

}  // namespace gauss_rinv
