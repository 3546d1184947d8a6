#pragma once

#include "gauss_rinv/gauss_space.hpp"

#include <functional>
#include <span>
#include <vector>

namespace gauss_rinv {

/// One-dimensional Gauss-Hermite rule for the weight e^{-t^2}.
struct QuadratureRule {
  int order = 0;
  std::vector<double> nodes;    // ascending
  std::vector<double> weights;  // positive
};

inline constexpr int kDefaultQuadOrder = 40;

/// Nodes are the roots of H_m found by Newton iteration on the orthonormal
/// three-term recurrence. Rules are built once per order and cached; the
/// returned reference stays valid for the program lifetime.
const QuadratureRule& gauss_hermite_rule(int order);

/// Tensor Gauss-Hermite approximation of
///   \int f(x) e^{-lambda |x - x0|^2} dx
/// using the substitution x = x0 + t / sqrt(lambda) on every axis.
double integrate_gaussian(const std::function<double(std::span<const double>)>& f,
                          const WeightSpec& w, int order = kDefaultQuadOrder);

/// Quadrature estimate of <p, q>_w.
double inner_product_quadrature(const Polynomial& p, const Polynomial& q, const WeightSpec& w,
                                int order = kDefaultQuadOrder);

enum class WaveKind { Cos, Sin, Exp };

/// Closed form of \int p(x) g(k.x) e^{-lambda |x - x0|^2} dx with
/// g in {cos, sin, exp}, by completing the square:
///   e^{z k.x} e^{-|x|^2} = e^{z^2 |k|^2 / 4} e^{-|x - z k / 2|^2},  z in {1, i}.
double weighted_wave_moment(const Polynomial& p, std::span<const double> k, WaveKind kind,
                            const WeightSpec& w);

/// The unit-weight case \int p(x) g(k.x) e^{-|x|^2} dx.
double gaussian_moment(const Polynomial& p, std::span<const double> k, WaveKind kind);

}  // namespace gauss_rinv
