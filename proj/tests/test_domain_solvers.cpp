#include "doctest.h"

#include "gauss_rinv/domain_solvers.hpp"
#include "gauss_rinv/random_corpus.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <numbers>

using namespace gauss_rinv;

namespace {

const double kSqrtPi = std::sqrt(std::numbers::pi);

}  // namespace

TEST_CASE("box parsing and geometry") {
  const auto box = BoxDomain::parse("-1,1;0,2");
  CHECK(box.dim() == 2);
  CHECK(box.diameter() == doctest::Approx(std::sqrt(8.0)));
  CHECK(box.center() == std::vector<double>{0.0, 1.0});
  CHECK_THROWS_AS(BoxDomain::parse("1,-1"), std::invalid_argument);
  CHECK_THROWS_AS(BoxDomain::parse("1"), std::invalid_argument);
  CHECK_THROWS_AS(BoxDomain::parse("a,b"), std::invalid_argument);
  CHECK_THROWS_AS(BoxDomain::parse(""), std::invalid_argument);
}

TEST_CASE("sampled functions vanish outside their box") {
  const BoxDomain box({0.0}, {1.0});
  const auto f = SampledFunction::constant(box, 2.0);
  const double inside = 0.5, outside = 1.5;
  CHECK(f({&inside, 1}) == 2.0);
  CHECK(f({&outside, 1}) == 0.0);

  const auto g = SampledFunction::grid(BoxDomain({0.0, 0.0}, {1.0, 2.0}), {2, 3}, {0, 1, 2, 10, 11, 12});
  const std::vector<double> p{0.5, 1.5};
  CHECK(g(p) == doctest::Approx(0.5 * (1.5 + 11.5)));
  CHECK_THROWS_AS(SampledFunction::grid(box, {3}, {1, 2}), std::invalid_argument);
}

TEST_CASE("box integration") {
  const BoxDomain box({-1.0, 0.0}, {1.0, 1.0});
  const double value = integrate_box(
      [](std::span<const double> x) { return std::exp(-x[0] * x[0] - x[1] * x[1]); }, box);
  const double axis0 = kSqrtPi * std::erf(1.0);
  const double axis1 = kSqrtPi / 2 * std::erf(1.0);
  CHECK(std::abs(value - axis0 * axis1) < 1e-12);
}

TEST_CASE("bounded solve, constant on (-1, 1)") {
  const BoxDomain box({-1.0}, {1.0});
  const auto r = solve_bounded(SampledFunction::constant(box, 1.0), 0, 30, 1e-10);
  CHECK(r.constant == doctest::Approx(std::sqrt(std::exp(4.0) / 8.0)));
  CHECK(r.bound_value == doctest::Approx(std::sqrt(std::exp(4.0) / 8.0) * std::sqrt(2.0)));
  CHECK(r.f_norm_U == doctest::Approx(std::sqrt(2.0)));
  CHECK(r.bound_satisfied);
  CHECK(r.margin > 0);
  CHECK(r.residual_ok);
  CHECK(r.weak_residual <= kWeakResidualTolerance);
  CHECK(r.weighted_satisfied);
  CHECK(r.f_weighted_norm_sq == doctest::Approx(kSqrtPi * std::erf(1.0)).epsilon(1e-12));
  CHECK(r.solve.residual_exact);
}

TEST_CASE("bounded solve, zero and odd data") {
  const BoxDomain box({-1.0}, {1.0});
  const auto zero = solve_bounded(SampledFunction::constant(box, 0.0), 0, 10);
  CHECK(zero.solve.solution.coeffs.empty());
  CHECK(zero.u_norm_U == 0.0);
  CHECK(zero.bound_satisfied);

  const auto odd = solve_bounded(SampledFunction::polynomial(box, Polynomial::variable(1, 0)), 0, 20);
  // int_{-1}^{1} x^2 e^{-x^2} dx
  CHECK(odd.f_weighted_norm_sq == doctest::Approx(kSqrtPi / 2 * std::erf(1.0) - std::exp(-1.0)).epsilon(1e-12));
  CHECK(odd.weighted_ratio <= 0.125);
  CHECK(odd.bound_satisfied);
  CHECK(odd.residual_ok);
  // Only odd Hermite modes appear.
  for (const auto& [m, c] : odd.solve.solution.coeffs) CHECK(m[0] % 2 == 1);
}

TEST_CASE("bounded solve with shift, off-centre box and two dimensions") {
  const auto shifted = solve_bounded(SampledFunction::constant(BoxDomain({0.5}, {2.0}), 1.0), 1, 12);
  CHECK(shifted.center == std::vector<double>{1.25});
  CHECK(shifted.bound_satisfied);
  CHECK(shifted.solve.residual_exact);
  CHECK(shifted.weak_residual < 1e-6);

  const BoxDomain square({-1.0, -0.5}, {1.0, 0.5});
  const Polynomial p = Polynomial::variable(2, 0) * Polynomial::variable(2, 1) + Polynomial::constant(2, 1);
  const auto r = solve_bounded(SampledFunction::polynomial(square, p), 0, 6, 1e-9);
  CHECK(r.bound_satisfied);
  CHECK(r.weighted_ratio <= 1.0 / 16);
  CHECK(r.residual_ok);
}

TEST_CASE("bounded solve rejects bad parameters") {
  const BoxDomain box({-1.0}, {1.0});
  CHECK_THROWS_AS(solve_bounded(SampledFunction::constant(box, 1.0), 0, 4, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(solve_bounded(SampledFunction::constant(box, 1.0), 0, -1), std::invalid_argument);
}

TEST_CASE("embedding examples") {
  const auto one = embedding_check(Polynomial::constant(1, 1));
  CHECK(one.weighted_norm_sq == doctest::Approx(kSqrtPi).epsilon(1e-15));
  CHECK_FALSE(one.l2_norm_sq.has_value());
  REQUIRE(one.sup_sq.has_value());
  CHECK(*one.sup_sq == 1.0);
  CHECK(one.pass);
  CHECK(std::abs(one.weighted_norm_sq - kSqrtPi * *one.sup_sq) < 1e-12);

  const auto chi = embedding_check(SampledFunction::constant(BoxDomain({0.0}, {1.0}), 1.0));
  CHECK(chi.weighted_norm_sq == doctest::Approx(kSqrtPi / 2 * std::erf(1.0)).epsilon(1e-12));
  CHECK(*chi.l2_norm_sq == doctest::Approx(1.0));
  CHECK(chi.pass);

  const auto zero = embedding_check(Polynomial(2));
  CHECK(zero.weighted_norm_sq == 0.0);
  CHECK(*zero.l2_norm_sq == 0.0);
  CHECK(zero.pass);

  CHECK_THROWS_AS(embedding_check(Polynomial::variable(1, 0)), std::invalid_argument);
}

TEST_CASE("embedding inequalities over a random corpus") {
  CorpusRng rng(404);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 1 + trial % 2;
    std::vector<double> lo, hi;
    for (int j = 0; j < n; ++j) {
      const double a = rng.uniform(-30, 30) / 10.0;
      lo.push_back(a);
      hi.push_back(a + rng.uniform(1, 30) / 10.0);
    }
    const auto r = embedding_check(SampledFunction::polynomial(BoxDomain(lo, hi), rng.polynomial(n, 4)), 1e-10);
    CHECK(r.pass);
  }
}

TEST_CASE("log-polynomial calculus") {
  LogPolynomial p;
  p.add_term(2, 1, 3);  // 3 x^2 ln x
  const auto d = p.derivative();
  LogPolynomial expected;
  expected.add_term(1, 1, 6);
  expected.add_term(1, 0, 3);
  CHECK(d == expected);
  CHECK(p.evaluate(std::exp(1.0)) == doctest::Approx(3 * std::exp(2.0)));
  CHECK(p.at_one() == 0);
  CHECK_THROWS_AS(p.evaluate(0.0), std::domain_error);
}

TEST_CASE("counterexample") {
  const auto r = growth_counterexample(1000, 0, 0);
  CHECK(r.u_at_one_closed == Rational(1, 6));
  CHECK(r.u_at_one_integral == Rational(1, 6));
  CHECK(r.second_derivative_exact);
  CHECK(r.max_second_derivative_error <= 1e-12);
  CHECK(r.max_formula_error <= 1e-12);
  REQUIRE(r.growth.size() == 3);
  CHECK(r.growth[0].R == 10.0);
  CHECK(r.growth[2].R == 1000.0);
  CHECK(r.growth_increasing);
  CHECK(r.growth[2].integral > 1e6);
  CHECK(r.weighted_finite);
  CHECK(r.weighted_integral + r.weighted_tail_bound < 1.0);

  // Independent quadrature of the same integrals.
  boost::math::quadrature::tanh_sinh<double> ts;
  auto u = [](double x) { return x * std::log(x) - x / 2 + 2.0 / 3.0; };
  for (const auto& g : r.growth) {
    const double oracle = ts.integrate([&](double x) { return u(x) * u(x); }, 1.0, g.R);
    CHECK(std::abs(g.integral - oracle) <= 1e-9 * oracle);
  }
  const double weighted = ts.integrate([&](double x) { return u(x) * u(x) * std::exp(-x * x); }, 1.0, 30.0);
  CHECK(std::abs(r.weighted_integral - weighted) <= 1e-10);

  const auto shifted = growth_counterexample(50, Rational(2), Rational(-1, 3));
  CHECK(shifted.u_at_one_closed == Rational(1, 6) + 2 - Rational(1, 3));
  CHECK(shifted.u_at_one_integral == shifted.u_at_one_closed);
  CHECK(shifted.second_derivative_exact);
  CHECK(shifted.max_formula_error <= 1e-12);

  CHECK_THROWS_AS(growth_counterexample(0.5, 0, 0), std::invalid_argument);
}
