#include "gauss_rinv/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace gauss_rinv {

namespace {

QuadratureRule build_rule(int order) {
  constexpr double kNewtonTol = 1e-14;
  constexpr int kMaxNewton = 100;
  const double pi_m4 = 1.0 / std::pow(std::numbers::pi, 0.25);
  const auto n = static_cast<std::size_t>(order);

  std::vector<double> x(n), w(n);
  const std::size_t half = (n + 1) / 2;
  double z = 0.0;
  for (std::size_t i = 0; i < half; ++i) {
    // Asymptotic initial guesses for the largest roots, then extrapolation.
    if (i == 0) {
      z = std::sqrt(2.0 * order + 1) - 1.85575 * std::pow(2.0 * order + 1, -0.16667);
    } else if (i == 1) {
      z -= 1.14 * std::pow(static_cast<double>(order), 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * x[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * x[1];
    } else {
      z = 2.0 * z - x[i - 2];
    }

    double derivative = 0.0;
    bool converged = false;
    for (int it = 0; it < kMaxNewton; ++it) {
      // Orthonormal Hermite recurrence; p1 ends as the degree-m value.
      double p1 = pi_m4;
      double p2 = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        const auto jd = static_cast<double>(j);
        p1 = z * std::sqrt(2.0 / (jd + 1)) * p2 - std::sqrt(jd / (jd + 1)) * p3;
      }
      derivative = std::sqrt(2.0 * order) * p2;
      const double previous = z;
      z = previous - p1 / derivative;
      if (std::abs(z - previous) <= kNewtonTol * std::max(1.0, std::abs(z))) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      throw std::runtime_error("gauss_hermite_rule: Newton iteration did not converge");
    }
    x[i] = z;
    x[n - 1 - i] = -z;
    w[i] = 2.0 / (derivative * derivative);
    w[n - 1 - i] = w[i];
  }
  if (n % 2 == 1) x[n / 2] = 0.0;  // exact symmetry of the middle root

  QuadratureRule rule;
  rule.order = order;
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  for (std::size_t i : perm) {
    rule.nodes.push_back(x[i]);
    rule.weights.push_back(w[i]);
  }
  return rule;
}

std::complex<double> ipow(std::complex<double> base, int e) {
  std::complex<double> acc = 1.0;
  for (int i = 0; i < e; ++i) acc *= base;
  return acc;
}

// E[y^e] style integral: \int (c + s / sqrt(lambda))^e e^{-s^2} ds / sqrt(pi).
std::complex<double> shifted_moment(int e, std::complex<double> c, double lambda) {
  std::complex<double> acc = 0.0;
  double binom = 1.0;  // C(e, j)
  for (int j = 0; j <= e; ++j) {
    if (j > 0) binom = binom * (e - j + 1) / j;
    if (j % 2 != 0) continue;
    // \int s^j e^{-s^2} ds / sqrt(pi) = (j-1)!! / 2^{j/2}
    double gaussian = 1.0;
    for (int i = j - 1; i > 0; i -= 2) gaussian *= i;
    gaussian /= std::pow(2.0 * lambda, j / 2);
    acc += binom * ipow(c, e - j) * gaussian;
  }
  return acc;
}

}  // namespace

const QuadratureRule& gauss_hermite_rule(int order) {
  if (order < 1) throw std::invalid_argument("gauss_hermite_rule: order must be >= 1");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const QuadratureRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[order];
  if (!slot) slot = std::make_unique<const QuadratureRule>(build_rule(order));
  return *slot;
}

double integrate_gaussian(const std::function<double(std::span<const double>)>& f,
                          const WeightSpec& w, int order) {
  const QuadratureRule& rule = gauss_hermite_rule(order);
  const auto n = static_cast<std::size_t>(w.dim);
  const double scale = 1.0 / std::sqrt(to_double(w.lambda));
  std::vector<double> center(n);
  for (std::size_t j = 0; j < n; ++j) center[j] = to_double(w.center[j]);

  std::vector<std::size_t> idx(n, 0);
  std::vector<double> point(n);
  double total = 0.0;
  const std::size_t m = rule.nodes.size();
  while (true) {
    double weight = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      point[j] = center[j] + rule.nodes[idx[j]] * scale;
      weight *= rule.weights[idx[j]];
    }
    total += weight * f(point);
    std::size_t j = 0;
    while (j < n && ++idx[j] == m) idx[j++] = 0;
    if (j == n) break;
  }
  return total * std::pow(scale, static_cast<double>(n));
}

double inner_product_quadrature(const Polynomial& p, const Polynomial& q, const WeightSpec& w,
                                int order) {
  require_same_dim(p.dim(), q.dim(), "inner_product_quadrature");
  require_same_dim(p.dim(), w.dim, "inner_product_quadrature");
  const auto pd = p.cast<double>();
  const auto qd = q.cast<double>();
  return integrate_gaussian(
      [&](std::span<const double> x) { return pd.evaluate(x) * qd.evaluate(x); }, w, order);
}

double weighted_wave_moment(const Polynomial& p, std::span<const double> k, WaveKind kind,
                            const WeightSpec& w) {
  require_same_dim(p.dim(), static_cast<int>(k.size()), "gaussian_moment wave vector");
  require_same_dim(p.dim(), w.dim, "gaussian_moment weight");
  using cd = std::complex<double>;
  const cd z = kind == WaveKind::Exp ? cd(1.0, 0.0) : cd(0.0, 1.0);
  const double lambda = to_double(w.lambda);
  const auto n = static_cast<std::size_t>(w.dim);

  // After x = x0 + s / sqrt(lambda) and completing the square the Gaussian
  // is re-centred at c = x0 + z k / (2 lambda).
  std::vector<cd> c(n);
  double k_sq = 0.0;
  cd phase = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double x0 = to_double(w.center[j]);
    c[j] = x0 + z * k[j] / (2.0 * lambda);
    k_sq += k[j] * k[j];
    phase += z * k[j] * x0;
  }
  const cd prefactor = std::exp(phase + z * z * k_sq / (4.0 * lambda)) *
                       std::pow(std::numbers::pi / lambda, 0.5 * static_cast<double>(n));

  cd sum = 0.0;
  for (const auto& [m, coef] : p.terms()) {
    cd term = to_double(coef);
    for (std::size_t j = 0; j < n; ++j) term *= shifted_moment(m[static_cast<int>(j)], c[j], lambda);
    sum += term;
  }
  const cd value = prefactor * sum;
  return kind == WaveKind::Sin ? value.imag() : value.real();
}

double gaussian_moment(const Polynomial& p, std::span<const double> k, WaveKind kind) {
  return weighted_wave_moment(p, k, kind, WeightSpec::unit(p.dim()));
}

}  // namespace gauss_rinv
