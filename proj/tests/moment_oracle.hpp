#pragma once

// Test-only oracle: exact weighted integrals computed directly from Gaussian
// moments, with no Hermite expansion involved.
//
//   \int (x - c)^{2i} e^{-lambda (x - c)^2} dx = (2i-1)!! / (2 lambda)^i * sqrt(pi / lambda)

#include "gauss_rinv/gauss_space.hpp"

namespace oracle {

using gauss_rinv::Rational;

inline Rational centered_moment(int j, const Rational& lambda) {
  if (j % 2 != 0) return 0;
  Rational acc = 1;
  for (int i = j - 1; i > 0; i -= 2) acc *= i;
  for (int i = 0; i < j / 2; ++i) acc /= 2 * lambda;
  return acc;
}

/// \int x^e e^{-lambda (x - c)^2} dx in units of sqrt(pi / lambda).
inline Rational axis_moment(int e, const Rational& lambda, const Rational& c) {
  Rational acc = 0;
  for (int j = 0; j <= e; ++j) {
    acc += gauss_rinv::binomial(static_cast<unsigned>(e), static_cast<unsigned>(j)) *
           gauss_rinv::pow(c, e - j) * centered_moment(j, lambda);
  }
  return acc;
}

/// \int p e^{-lambda |x - x0|^2} dx as a rational multiple of pi^{n/2} lambda^{-n/2}.
inline Rational integral(const gauss_rinv::Polynomial& p, const gauss_rinv::WeightSpec& w) {
  Rational acc = 0;
  for (const auto& [m, coef] : p.terms()) {
    Rational term = coef;
    for (int j = 0; j < w.dim; ++j) {
      term *= axis_moment(m[j], w.lambda, w.center[static_cast<std::size_t>(j)]);
    }
    acc += term;
  }
  return acc;
}

/// Physicists' Hermite H_k(t) from the explicit sum
///   H_k(t) = k! sum_m (-1)^m (2t)^{k-2m} / (m! (k-2m)!).
inline std::vector<Rational> hermite_explicit(int k) {
  std::vector<Rational> c(static_cast<std::size_t>(k) + 1, Rational(0));
  for (int m = 0; 2 * m <= k; ++m) {
    Rational term = gauss_rinv::factorial(static_cast<unsigned>(k)) /
                    (gauss_rinv::factorial(static_cast<unsigned>(m)) *
                     gauss_rinv::factorial(static_cast<unsigned>(k - 2 * m)));
    if (m % 2 != 0) term = -term;
    term *= gauss_rinv::pow(Rational(2), k - 2 * m);
    c[static_cast<std::size_t>(k - 2 * m)] = term;
  }
  return c;
}

}  // namespace oracle
