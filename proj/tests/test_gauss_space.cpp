#include "doctest.h"

#include "gauss_rinv/gauss_space.hpp"
#include "gauss_rinv/quadrature.hpp"
#include "gauss_rinv/random_corpus.hpp"
#include "moment_oracle.hpp"

#include <cmath>
#include <numbers>

using namespace gauss_rinv;

namespace {

const double kSqrtPi = std::sqrt(std::numbers::pi);

Polynomial xpow(int e, int dim = 1, int axis = 0) {
  MultiIndex m(dim);
  m[axis] = e;
  return Polynomial::monomial(m, 1);
}

MultiIndex idx1(int k) { return MultiIndex{k}; }

// Expansion of t^e over H_0..H_e by back-substitution against the explicit
// Hermite formula (independent of the recurrence used in the library).
std::vector<Rational> power_in_hermite(int e) {
  std::vector<Rational> target(static_cast<std::size_t>(e) + 1, Rational(0));
  target[static_cast<std::size_t>(e)] = 1;
  std::vector<Rational> out(target.size(), Rational(0));
  for (int k = e; k >= 0; --k) {
    const auto hk = oracle::hermite_explicit(k);
    const Rational c = target[static_cast<std::size_t>(k)] / hk[static_cast<std::size_t>(k)];
    out[static_cast<std::size_t>(k)] = c;
    for (int i = 0; i <= k; ++i) target[static_cast<std::size_t>(i)] -= c * hk[static_cast<std::size_t>(i)];
  }
  return out;
}

}  // namespace

TEST_CASE("monomial_to_hermite examples") {
  const WeightSpec w = WeightSpec::unit(1);

  const auto e2 = monomial_to_hermite(xpow(2), w);
  const auto o2 = power_in_hermite(2);
  CHECK(o2[2] == Rational(1, 4));
  CHECK(o2[0] == Rational(1, 2));
  CHECK(e2.coefficient(idx1(2)) == Rational(1, 4));
  CHECK(e2.coefficient(idx1(0)) == Rational(2, 4));
  CHECK(e2.coeffs.size() == 2);

  const auto e0 = monomial_to_hermite(Polynomial::constant(1, 1), w);
  CHECK(e0.coeffs.size() == 1);
  CHECK(e0.coefficient(idx1(0)) == 1);

  const auto e4 = monomial_to_hermite(xpow(4), w);
  const auto o4 = power_in_hermite(4);
  CHECK(o4[4] == Rational(1, 16));
  CHECK(o4[2] == Rational(12, 16));
  CHECK(o4[0] == Rational(12, 16));
  for (int k = 0; k <= 4; ++k) CHECK(e4.coefficient(idx1(k)) == o4[static_cast<std::size_t>(k)]);

  CHECK_THROWS_AS(monomial_to_hermite(xpow(2, 2), w), DimensionMismatch);
}

TEST_CASE("unit-weight basis matches the explicit Hermite formula") {
  for (int k = 0; k <= 12; ++k) {
    const auto coeffs = hermite_axis_polynomial(k, 1, 0);
    const auto expected = oracle::hermite_explicit(k);
    CHECK(coeffs == expected);
  }
}

TEST_CASE("round trip monomial <-> hermite, any weight") {
  CorpusRng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 3;
    const int degree = n == 1 ? 12 : (n == 2 ? 8 : 6);
    const Polynomial p = rng.polynomial(n, degree, 8);
    std::vector<Rational> center;
    for (int j = 0; j < n; ++j) center.push_back(rng.rational(4));
    const WeightSpec w(n, Rational(rng.uniform(1, 16), rng.uniform(1, 16)), center);
    CHECK(hermite_to_monomial(monomial_to_hermite(p, w)) == p);
  }
}

TEST_CASE("inner_product examples") {
  const WeightSpec w = WeightSpec::unit(1);
  const auto one = Polynomial::constant(1, 1);
  const auto ip = inner_product(xpow(2), one, w);
  CHECK(ip.value == Rational(1, 2));
  CHECK(ip.pi_power() == Rational(1, 2));
  CHECK(ip.to_double() == doctest::Approx(kSqrtPi / 2));
  CHECK(inner_product(xpow(1), one, w).value == 0);
  CHECK(inner_product(xpow(2), xpow(2), w).value == Rational(3, 4));
}

TEST_CASE("norm_sq examples") {
  const auto h2 = hermite_basis_polynomial(idx1(2), WeightSpec::unit(1));
  CHECK(norm_sq(h2, WeightSpec::unit(1)).value == 8);
  CHECK(norm_sq(Polynomial(1), WeightSpec::unit(1)).value == 0);
  const auto n2 = norm_sq(Polynomial::constant(2, 1), WeightSpec::unit(2));
  CHECK(n2.value == 1);
  CHECK(n2.pi_power() == 1);
}

TEST_CASE("exact inner product agrees with the moment oracle (Parseval)") {
  CorpusRng rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 3;
    const Polynomial p = rng.polynomial(n, 6);
    const Polynomial q = rng.polynomial(n, 6);
    std::vector<Rational> center;
    for (int j = 0; j < n; ++j) center.push_back(trial % 2 ? rng.rational(3) : Rational(0));
    const WeightSpec w(n, trial % 4 == 0 ? Rational(1) : Rational(rng.uniform(1, 9), rng.uniform(1, 9)),
                       center);
    CHECK(inner_product(p, q, w).value == oracle::integral(p * q, w));
    const auto ns = norm_sq(p, w);
    CHECK(ns.value == oracle::integral(p * p, w));
    CHECK(ns.value >= 0);
    CHECK((ns.value == 0) == p.is_zero());
  }
}

TEST_CASE("exact inner product agrees with tensor quadrature") {
  CorpusRng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 3;
    const Polynomial p = rng.polynomial(n, 8);
    const Polynomial q = rng.polynomial(n, 8);
    const WeightSpec w = WeightSpec::unit(n);
    const double exact = inner_product(p, q, w).to_double();
    const double quad = inner_product_quadrature(p, q, w, 20);
    const double scale = std::max(1.0, inner_product_quadrature(p * p + q * q, Polynomial::constant(n, 1), w, 20));
    CHECK(std::abs(exact - quad) <= 1e-10 * scale);
  }
}

TEST_CASE("GaussianScalar unit discipline") {
  const GaussianScalar a(Rational(1, 2), 1, 1);
  const GaussianScalar b(Rational(1, 2), 2, 1);
  const GaussianScalar c(Rational(1, 2), 1, 2);
  CHECK_THROWS_AS((void)(a == b), UnitMismatch);
  CHECK_THROWS_AS((void)(a < c), UnitMismatch);
  CHECK_THROWS_AS(a + b, UnitMismatch);
  CHECK(ratio(a * Rational(3), a) == 3);
  const auto sq = a * a;
  CHECK(sq.power == 2);
  CHECK(sq.pi_power() == 1);
  CHECK(sq.to_double() == doctest::Approx(std::numbers::pi / 4));
  CHECK_THROWS_AS((void)(sq == a), UnitMismatch);
}

TEST_CASE("weight recognition") {
  const WeightSpec w(2, Rational(3, 2), {Rational(1), Rational(-1, 3)});
  const auto rec = recognize_gaussian_weight(w.as_polynomial());
  REQUIRE(rec.has_value());
  CHECK(*rec == w);
  CHECK(recognize_gaussian_weight(Polynomial::squared_norm(3)) == WeightSpec::unit(3));
  CHECK_FALSE(recognize_gaussian_weight(Polynomial::squared_norm(2) + Polynomial::constant(2, 1)));
  CHECK_FALSE(recognize_gaussian_weight(Polynomial::squared_norm(2) * Rational(-1)));
  CHECK_FALSE(recognize_gaussian_weight(xpow(2, 2, 0) + xpow(2, 2, 1) * Rational(2)));
  CHECK_THROWS_AS(WeightSpec(1, 0, {Rational(0)}), std::invalid_argument);
  CHECK_THROWS_AS(WeightSpec(2, 1, {Rational(0)}), DimensionMismatch);
}

TEST_CASE("gauss_hermite_rule examples") {
  const auto& r1 = gauss_hermite_rule(1);
  REQUIRE(r1.nodes.size() == 1);
  CHECK(r1.nodes[0] == 0.0);
  CHECK(r1.weights[0] == doctest::Approx(kSqrtPi).epsilon(1e-14));

  const auto& r2 = gauss_hermite_rule(2);
  CHECK(r2.nodes[0] == doctest::Approx(-1 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(r2.nodes[1] == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(r2.weights[0] == doctest::Approx(kSqrtPi / 2).epsilon(1e-14));
  CHECK(r2.weights[1] == doctest::Approx(kSqrtPi / 2).epsilon(1e-14));

  const auto& r3 = gauss_hermite_rule(3);
  double x4 = 0.0;
  for (std::size_t i = 0; i < 3; ++i) x4 += r3.weights[i] * std::pow(r3.nodes[i], 4);
  CHECK(std::abs(x4 - 3 * kSqrtPi / 4) <= 1e-12 * (3 * kSqrtPi / 4));

  CHECK(&gauss_hermite_rule(7) == &gauss_hermite_rule(7));
  CHECK_THROWS_AS(gauss_hermite_rule(0), std::invalid_argument);
}

TEST_CASE("gauss_hermite_rule degree exactness") {
  for (int m : {1, 2, 3, 5, 8, 13, 20, 30, 40}) {
    const auto& rule = gauss_hermite_rule(m);
    for (std::size_t i = 0; i < rule.weights.size(); ++i) CHECK(rule.weights[i] > 0);
    for (int e = 0; e <= 2 * m - 1; ++e) {
      double quad = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) quad += rule.weights[i] * std::pow(rule.nodes[i], e);
      const double exact = to_double(oracle::centered_moment(e, 1)) * kSqrtPi;
      // Odd moments vanish; compare those against the size of the terms.
      double magnitude = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) magnitude += rule.weights[i] * std::pow(std::abs(rule.nodes[i]), e);
      const double tol = 1e-12 * (e % 2 == 0 ? exact : magnitude);
      CHECK_MESSAGE(std::abs(quad - exact) <= tol, "m=", m, " e=", e);
    }
  }
}

TEST_CASE("gaussian_moment examples") {
  const auto one = Polynomial::constant(1, 1);
  const std::vector<double> k{1.0};
  CHECK(gaussian_moment(one, k, WaveKind::Cos) == doctest::Approx(kSqrtPi * std::exp(-0.25)).epsilon(1e-14));
  CHECK(gaussian_moment(one, k, WaveKind::Exp) == doctest::Approx(kSqrtPi * std::exp(0.25)).epsilon(1e-14));
  CHECK(gaussian_moment(one, k, WaveKind::Sin) == 0.0);
  CHECK(gaussian_moment(one, std::vector<double>{2.7}, WaveKind::Sin) == 0.0);

  const WeightSpec w = WeightSpec::unit(1);
  const double cos_quad = integrate_gaussian([](std::span<const double> x) { return std::cos(x[0]); }, w, 40);
  const double exp_quad = integrate_gaussian([](std::span<const double> x) { return std::exp(x[0]); }, w, 40);
  CHECK(std::abs(cos_quad - kSqrtPi * std::exp(-0.25)) <= 1e-10 * cos_quad);
  CHECK(std::abs(exp_quad - kSqrtPi * std::exp(0.25)) <= 1e-10 * exp_quad);
  CHECK_THROWS_AS(gaussian_moment(one, std::vector<double>{1.0, 0.0}, WaveKind::Cos), DimensionMismatch);
}

TEST_CASE("closed-form wave moments match quadrature") {
  CorpusRng rng(31);
  for (int trial = 0; trial < 45; ++trial) {
    const int n = 1 + trial % 3;
    const Polynomial p = rng.polynomial(n, 5);
    std::vector<double> k;
    std::vector<Rational> center;
    for (int j = 0; j < n; ++j) {
      k.push_back(to_double(rng.rational(8)) / 4);
      center.push_back(trial % 2 ? rng.rational(2) / 2 : Rational(0));
    }
    const WeightSpec w(n, trial % 3 == 0 ? Rational(1) : Rational(rng.uniform(1, 8), rng.uniform(1, 4)), center);
    const auto pd = p.cast<double>();
    for (WaveKind kind : {WaveKind::Cos, WaveKind::Sin, WaveKind::Exp}) {
      auto wave = [&](std::span<const double> x) {
        double phase = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) phase += k[j] * x[j];
        const double g = kind == WaveKind::Cos ? std::cos(phase)
                         : kind == WaveKind::Sin ? std::sin(phase)
                                                  : std::exp(phase);
        return pd.evaluate(x) * g;
      };
      auto magnitude = [&](std::span<const double> x) { return std::abs(wave(x)); };
      const double closed = weighted_wave_moment(p, k, kind, w);
      const double quad = integrate_gaussian(wave, w, 40);
      const double scale = std::max(1e-300, integrate_gaussian(magnitude, w, 40));
      CHECK_MESSAGE(std::abs(closed - quad) <= 1e-10 * scale, "trial ", trial);
    }
  }
}
