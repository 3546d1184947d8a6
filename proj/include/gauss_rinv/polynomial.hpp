#pragma once

#include "gauss_rinv/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gauss_rinv {

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline void require_same_dim(int a, int b, const char* where) {
  if (a != b) {
    throw DimensionMismatch(std::string(where) + ": dimension " + std::to_string(a) +
                            " vs " + std::to_string(b));
  }
}

/// Exponent vector of a monomial x^e = x_1^{e_1} ... x_n^{e_n}.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(int dim) : exps_(static_cast<std::size_t>(dim), 0) {}
  explicit MultiIndex(std::vector<int> exps) : exps_(std::move(exps)) {
    for (int e : exps_) {
      if (e < 0) throw std::invalid_argument("MultiIndex: negative exponent");
    }
  }
  MultiIndex(std::initializer_list<int> exps) : MultiIndex(std::vector<int>(exps)) {}

  static MultiIndex unit(int dim, int axis) {
    MultiIndex m(dim);
    m.exps_.at(static_cast<std::size_t>(axis)) = 1;
    return m;
  }

  int dim() const { return static_cast<int>(exps_.size()); }
  int degree() const { return std::accumulate(exps_.begin(), exps_.end(), 0); }
  int operator[](int j) const { return exps_[static_cast<std::size_t>(j)]; }
  int& operator[](int j) { return exps_[static_cast<std::size_t>(j)]; }
  const std::vector<int>& exponents() const { return exps_; }

  MultiIndex operator+(const MultiIndex& o) const {
    require_same_dim(dim(), o.dim(), "MultiIndex::operator+");
    MultiIndex r = *this;
    for (std::size_t j = 0; j < exps_.size(); ++j) r.exps_[j] += o.exps_[j];
    return r;
  }

  bool operator==(const MultiIndex&) const = default;

 private:
  std::vector<int> exps_;
};

/// Graded lexicographic order: total degree first, then lexicographic on the
/// exponent vector (so x2 < x1 among degree-one monomials).
struct GrlexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    const int da = a.degree();
    const int db = b.degree();
    if (da != db) return da < db;
    return a.exponents() < b.exponents();
  }
};

/// All multi-indices in `dim` variables of total degree exactly `degree`, in
/// ascending grlex order.
std::vector<MultiIndex> indices_of_degree(int dim, int degree);

/// All multi-indices of total degree <= `max_degree`, ascending grlex order.
std::vector<MultiIndex> indices_up_to(int dim, int max_degree);

/// Sparse multivariate polynomial with coefficients in `Scalar`.
///
/// Zero coefficients are never stored, so structural equality is value
/// equality. Terms are kept in ascending graded lexicographic order.
template <typename Scalar>
class BasicPolynomial {
 public:
  using TermMap = std::map<MultiIndex, Scalar, GrlexLess>;

  explicit BasicPolynomial(int dim = 1) : dim_(dim) {
    if (dim < 1) throw std::invalid_argument("Polynomial: dimension must be positive");
  }

  static BasicPolynomial constant(int dim, const Scalar& c) {
    BasicPolynomial p(dim);
    p.add_term(MultiIndex(dim), c);
    return p;
  }

  /// The coordinate function x_{axis}, zero-based.
  static BasicPolynomial variable(int dim, int axis) {
    if (axis < 0 || axis >= dim) throw std::out_of_range("Polynomial::variable: axis");
    BasicPolynomial p(dim);
    p.add_term(MultiIndex::unit(dim, axis), Scalar(1));
    return p;
  }

  static BasicPolynomial monomial(const MultiIndex& m, const Scalar& c) {
    BasicPolynomial p(m.dim());
    p.add_term(m, c);
    return p;
  }

  /// |x|^2 in `dim` variables.
  static BasicPolynomial squared_norm(int dim) {
    BasicPolynomial p(dim);
    for (int j = 0; j < dim; ++j) {
      MultiIndex m(dim);
      m[j] = 2;
      p.add_term(m, Scalar(1));
    }
    return p;
  }

  int dim() const { return dim_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Total degree; -1 for the zero polynomial.
  int degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.degree(); }

  Scalar coefficient(const MultiIndex& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  void add_term(const MultiIndex& m, const Scalar& c) {
    require_same_dim(dim_, m.dim(), "Polynomial::add_term");
    if (c == Scalar(0)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == Scalar(0)) terms_.erase(it);
    }
  }

  BasicPolynomial& operator+=(const BasicPolynomial& o) {
    require_same_dim(dim_, o.dim_, "Polynomial::operator+");
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }

  BasicPolynomial& operator-=(const BasicPolynomial& o) {
    require_same_dim(dim_, o.dim_, "Polynomial::operator-");
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }

  BasicPolynomial& operator*=(const Scalar& s) {
    if (s == Scalar(0)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend BasicPolynomial operator+(BasicPolynomial a, const BasicPolynomial& b) { return a += b; }
  friend BasicPolynomial operator-(BasicPolynomial a, const BasicPolynomial& b) { return a -= b; }
  friend BasicPolynomial operator*(BasicPolynomial a, const Scalar& s) { return a *= s; }
  friend BasicPolynomial operator*(const Scalar& s, BasicPolynomial a) { return a *= s; }
  friend BasicPolynomial operator-(BasicPolynomial a) { return a *= Scalar(-1); }

  friend BasicPolynomial operator*(const BasicPolynomial& a, const BasicPolynomial& b) {
    require_same_dim(a.dim_, b.dim_, "Polynomial::operator*");
    BasicPolynomial r(a.dim_);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma + mb, ca * cb);
    }
    return r;
  }

  bool operator==(const BasicPolynomial& o) const {
    return dim_ == o.dim_ && terms_ == o.terms_;
  }

  /// Partial derivative with respect to x_{axis}, zero-based.
  BasicPolynomial partial(int axis) const {
    if (axis < 0 || axis >= dim_) {
      throw std::out_of_range("Polynomial::partial: axis " + std::to_string(axis) +
                              " outside [0, " + std::to_string(dim_) + ")");
    }
    BasicPolynomial r(dim_);
    for (const auto& [m, c] : terms_) {
      const int e = m[axis];
      if (e == 0) continue;
      MultiIndex d = m;
      d[axis] = e - 1;
      r.add_term(d, c * Scalar(e));
    }
    return r;
  }

  std::vector<BasicPolynomial> gradient() const {
    std::vector<BasicPolynomial> g;
    g.reserve(static_cast<std::size_t>(dim_));
    for (int j = 0; j < dim_; ++j) g.push_back(partial(j));
    return g;
  }

  BasicPolynomial laplacian() const {
    BasicPolynomial r(dim_);
    for (const auto& [m, c] : terms_) {
      for (int j = 0; j < dim_; ++j) {
        const int e = m[j];
        if (e < 2) continue;
        MultiIndex d = m;
        d[j] = e - 2;
        r.add_term(d, c * Scalar(e * (e - 1)));
      }
    }
    return r;
  }

  /// Horner-free direct evaluation; exact for exact scalar types.
  template <typename T>
  T evaluate(std::span<const T> point) const {
    if (static_cast<int>(point.size()) != dim_) {
      throw DimensionMismatch("Polynomial::evaluate: point has length " +
                              std::to_string(point.size()) + ", expected " +
                              std::to_string(dim_));
    }
    T acc(0);
    for (const auto& [m, c] : terms_) {
      T term = convert<T>(c);
      for (int j = 0; j < dim_; ++j) {
        for (int e = 0; e < m[j]; ++e) term *= point[static_cast<std::size_t>(j)];
      }
      acc += term;
    }
    return acc;
  }

  template <typename T>
  T evaluate(const std::vector<T>& point) const {
    return evaluate(std::span<const T>(point));
  }

  template <typename Other>
  BasicPolynomial<Other> cast() const {
    BasicPolynomial<Other> r(dim_);
    for (const auto& [m, c] : terms_) r.add_term(m, convert<Other>(c));
    return r;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!first) os << " + ";
      first = false;
      os << "(" << it->second << ")";
      for (int j = 0; j < dim_; ++j) {
        const int e = it->first[j];
        if (e == 0) continue;
        os << "*x" << (j + 1);
        if (e > 1) os << "^" << e;
      }
    }
    return os.str();
  }

 private:
  template <typename T, typename S>
  static T convert(const S& s) {
    if constexpr (std::is_same_v<T, S>) {
      return s;
    } else if constexpr (std::is_same_v<S, Rational>) {
      return T(s.template convert_to<double>());
    } else {
      return T(s);
    }
  }

  int dim_;
  TermMap terms_;
};

using Polynomial = BasicPolynomial<Rational>;

/// Sum over j of a_j * b_j.
template <typename Scalar>
BasicPolynomial<Scalar> dot(const std::vector<BasicPolynomial<Scalar>>& a,
                            const std::vector<BasicPolynomial<Scalar>>& b) {
  if (a.size() != b.size() || a.empty()) throw DimensionMismatch("dot: length mismatch");
  BasicPolynomial<Scalar> r(a.front().dim());
  for (std::size_t j = 0; j < a.size(); ++j) r += a[j] * b[j];
  return r;
}

/// grad(p) . x, the radial derivative scaled by |x|.
template <typename Scalar>
BasicPolynomial<Scalar> euler_operator(const BasicPolynomial<Scalar>& p) {
  BasicPolynomial<Scalar> r(p.dim());
  for (int j = 0; j < p.dim(); ++j) {
    r += p.partial(j) * BasicPolynomial<Scalar>::variable(p.dim(), j);
  }
  return r;
}

}  // namespace gauss_rinv
