#pragma once

#include <Eigen/Dense>

#include <optional>
#include <utility>
#include <vector>

namespace gauss_rinv {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// The routines below pivot on the first nonzero entry, which is only sound
// over an exact field (Rational). Floating-point callers should use Eigen's
// decompositions instead.

/// Reduced row echelon form in place; returns the pivot columns.
template <typename Scalar>
std::vector<Eigen::Index> rref(Matrix<Scalar>& a) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < a.cols() && row < a.rows(); ++col) {
    Eigen::Index p = row;
    while (p < a.rows() && a(p, col) == Scalar(0)) ++p;
    if (p == a.rows()) continue;
    a.row(p).swap(a.row(row));
    const Scalar inv = Scalar(1) / a(row, col);
    a.row(row) *= inv;
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, col) == Scalar(0)) continue;
      const Scalar factor = a(r, col);
      a.row(r) -= factor * a.row(row);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

/// Solves a x = b for square nonsingular a; nullopt if singular.
template <typename Scalar>
std::optional<Vector<Scalar>> exact_solve(const Matrix<Scalar>& a, const Vector<Scalar>& b) {
  const Eigen::Index n = a.rows();
  Matrix<Scalar> aug(n, n + 1);
  aug.leftCols(n) = a;
  aug.col(n) = b;
  const auto pivots = rref(aug);
  if (static_cast<Eigen::Index>(pivots.size()) != n || (n > 0 && pivots.back() != n - 1)) {
    return std::nullopt;
  }
  return Vector<Scalar>(aug.col(n));
}

/// Inverse of a square matrix; nullopt if singular.
template <typename Scalar>
std::optional<Matrix<Scalar>> exact_inverse(const Matrix<Scalar>& a) {
  const Eigen::Index n = a.rows();
  Matrix<Scalar> aug(n, 2 * n);
  aug.leftCols(n) = a;
  aug.rightCols(n) = Matrix<Scalar>::Identity(n, n);
  const auto pivots = rref(aug);
  if (static_cast<Eigen::Index>(pivots.size()) < n || (n > 0 && pivots[static_cast<std::size_t>(n - 1)] != n - 1)) {
    return std::nullopt;
  }
  return Matrix<Scalar>(aug.rightCols(n));
}

/// Basis of {x : a x = 0}, one column per free variable. Each basis vector
/// has a 1 in its free column and zeros in the other free columns.
template <typename Scalar>
Matrix<Scalar> nullspace_basis(Matrix<Scalar> a) {
  const auto pivots = rref(a);
  std::vector<bool> is_pivot(static_cast<std::size_t>(a.cols()), false);
  for (auto p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;

  Matrix<Scalar> basis(a.cols(), a.cols() - static_cast<Eigen::Index>(pivots.size()));
  basis.setZero();
  Eigen::Index out = 0;
  for (Eigen::Index free = 0; free < a.cols(); ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    basis(free, out) = Scalar(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      basis(pivots[r], out) = -a(static_cast<Eigen::Index>(r), free);
    }
    ++out;
  }
  return basis;
}

}  // namespace gauss_rinv
