#include "gauss_rinv/suite.hpp"

#include "gauss_rinv/identity_battery.hpp"
#include "gauss_rinv/random_corpus.hpp"

#include <cmath>
#include <numbers>

namespace gauss_rinv {

namespace {

Json sharp_bound() {
  Json dims = Json::array();
  bool pass = true;
  for (int n = 1; n <= 3; ++n) {
    const auto r = solve_min_norm(Polynomial::constant(n, 1), 0, 0);
    const bool ok = r.residual_exact && r.exact_ratio == Rational(1, 8 * n);
    pass = pass && ok;
    dims.push_back({{"dim", n}, {"ratio", to_string(*r.exact_ratio)}, {"bound", to_string(r.bound)}, {"equal", ok}});
  }
  return {{"name", "sharp-bound"}, {"pass", pass}, {"solves", dims}};
}

Json bound_dominance(std::uint64_t seed, int count) {
  CorpusRng rng(seed);
  int passed = 0;
  Rational worst_gap = 1;  // smallest bound - ratio seen
  Json failures = Json::array();
  for (int i = 0; i < count; ++i) {
    const int n = static_cast<int>(rng.uniform(1, 3));
    const Polynomial f = rng.polynomial(n, 8);
    const auto r = solve_min_norm(f, 0, 8);
    const bool ok = r.residual_exact && *r.exact_ratio <= Rational(1, 8 * n);
    if (ok) {
      ++passed;
      worst_gap = std::min(worst_gap, Rational(1, 8 * n) - *r.exact_ratio);
    } else if (failures.size() < 5) {
      failures.push_back(f.to_string());
    }
  }
  return {{"name", "bound-dominance"},
          {"pass", passed == count},
          {"cases", count},
          {"passed", passed},
          {"smallest_gap", to_string(worst_gap)},
          {"failures", failures}};
}

Json operator_norms() {
  const double n1 = operator_norm(1, 0, 20);
  const double n2 = operator_norm(2, 0, 20);
  const bool ok1 = std::abs(n1 - 1.0 / std::sqrt(8.0)) <= 1e-10;
  const bool ok2 = std::abs(n2 - 0.25) <= 1e-10;
  return {{"name", "operator-norm"},
          {"pass", ok1 && ok2},
          {"norms",
           {{{"dim", 1}, {"degree", 20}, {"value", n1}, {"expected", 1.0 / std::sqrt(8.0)}},
            {{"dim", 2}, {"degree", 20}, {"value", n2}, {"expected", 0.25}}}}};
}

Json kernel_enrichment(int quad_order) {
  const double closed = 1.0 - 2.0 * std::exp(-0.5) / (1.0 + std::exp(-1.0));
  const auto plus = apply_Q(Polynomial::constant(1, 1), QConfig{1, 1, 0, EnrichmentPolicy::Axes, {}});
  const double quad_plus = ratio_by_quadrature(plus, quad_order);
  const auto minus = apply_Q(Polynomial::constant(1, 1), QConfig{1, -1, 0, EnrichmentPolicy::Axes, {}});
  const bool ok_plus = std::abs(plus.ratio - closed) <= 1e-10 && std::abs(quad_plus - closed) <= 1e-10 &&
                       plus.ratio <= 0.125 && plus.ratio_unenriched == 1.0 && plus.residual_exact;
  const bool ok_minus = minus.ratio <= 0.125 && minus.residual_exact;
  return {{"name", "kernel-enrichment"},
          {"pass", ok_plus && ok_minus},
          {"a=1",
           {{"ratio", plus.ratio},
            {"closed_form", closed},
            {"quadrature", quad_plus},
            {"ratio_unenriched", plus.ratio_unenriched},
            {"bound", to_string(plus.bound)}}},
          {"a=-1", {{"ratio", minus.ratio}, {"ratio_unenriched", minus.ratio_unenriched}, {"bound", to_string(minus.bound)}}}};
}

Json scaled_weight() {
  const auto r = solve_scaled(Polynomial::constant(1, 1), 0, WeightSpec(1, 2, {Rational(0)}), 0);
  const auto unit = solve_scaled(Polynomial::constant(1, 1), 0, WeightSpec::unit(1), 0);
  const auto plain = solve_min_norm(Polynomial::constant(1, 1), 0, 0);
  const bool identical = unit.solution.coeffs == plain.solution.coeffs && unit.exact_ratio == plain.exact_ratio;
  return {{"name", "scaled-weight"},
          {"pass", r.exact_ratio == Rational(1, 32) && r.bound == Rational(1, 32) && identical},
          {"ratio", to_string(*r.exact_ratio)},
          {"bound", to_string(r.bound)},
          {"unit_matches_unscaled", identical}};
}

Json bounded_domain() {
  const auto r = solve_bounded(SampledFunction::constant(BoxDomain({-1.0}, {1.0}), 1.0), 0, 30, 1e-10);
  Json j = to_json(r);
  j.erase("solve");
  Json out = {{"name", "bounded-domain"}, {"pass", r.bound_satisfied && r.residual_ok}};
  out.update(j);
  return out;
}

Json counterexample() {
  const auto r = growth_counterexample(1000, 0, 0);
  const bool pass = r.u_at_one_closed == Rational(1, 6) && r.u_at_one_integral == Rational(1, 6) &&
                    r.second_derivative_exact && r.growth_increasing && !r.growth.empty() &&
                    r.growth.back().integral > 1e6 && r.weighted_finite && r.max_formula_error <= 1e-12;
  Json out = {{"name", "counterexample"}, {"pass", pass}};
  out.update(to_json(r));
  return out;
}

Json embeddings(std::uint64_t seed) {
  CorpusRng rng(seed + 7);
  int passed = 0;
  const int count = 20;
  for (int i = 0; i < count; ++i) {
    const int n = static_cast<int>(rng.uniform(1, 2));
    std::vector<double> lo, hi;
    for (int j = 0; j < n; ++j) {
      const double a = static_cast<double>(rng.uniform(-30, 30)) / 10.0;
      lo.push_back(a);
      hi.push_back(a + static_cast<double>(rng.uniform(1, 30)) / 10.0);
    }
    if (embedding_check(SampledFunction::polynomial(BoxDomain(lo, hi), rng.polynomial(n, 4))).pass) ++passed;
  }
  const auto one = embedding_check(Polynomial::constant(1, 1));
  const double gap = std::abs(one.weighted_norm_sq - std::sqrt(std::numbers::pi) * one.sup_sq.value_or(0));
  const bool equality = gap <= 1e-8;
  return {{"name", "embeddings"},
          {"pass", passed == count && one.pass && equality},
          {"cases", count},
          {"passed", passed},
          {"constant_one", to_json(one)},
          {"sup_route_equality", equality}};
}

Json identity_battery(const SuiteOptions& o) {
  const auto tallies = run_identity_battery(o.seed, o.identity_cases, o.weight_cases, o.threads);
  Json list = Json::array();
  bool pass = true;
  for (const auto& t : tallies) {
    pass = pass && t.passed == t.cases;
    list.push_back({{"identity", t.identity}, {"cases", t.cases}, {"passed", t.passed}, {"failures", t.failures}});
  }
  return {{"name", "identity-battery"}, {"pass", pass}, {"identities", list}};
}

}  // namespace

SuiteResult run_suite(const SuiteOptions& o) {
  SuiteResult result;
  result.cases.push_back(sharp_bound());
  result.cases.push_back(bound_dominance(o.seed, o.dominance_cases));
  result.cases.push_back(operator_norms());
  result.cases.push_back(kernel_enrichment(o.quad_order));
  result.cases.push_back(identity_battery(o));
  result.cases.push_back(scaled_weight());
  result.cases.push_back(bounded_domain());
  result.cases.push_back(counterexample());
  result.cases.push_back(embeddings(o.seed));
  result.pass = true;
  for (const auto& c : result.cases) result.pass = result.pass && c["pass"].get<bool>();
  return result;
}

}  // namespace gauss_rinv
