// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "gauss_rinv/domain_solvers.hpp"
#include "gauss_rinv/identity_battery.hpp"
#include "gauss_rinv/random_corpus.hpp"
#include "gauss_rinv/right_inverse.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <sys/wait.h>

using namespace gauss_rinv;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

Outcome sharp_bound() {
  const auto t0 = Clock::now();
  bool ok = true;
  std::ostringstream d;
  for (int n = 1; n <= 3; ++n) {
    const auto r = solve_min_norm(Polynomial::constant(n, 1), 0, 0);
    ok = ok && r.residual_exact && r.exact_ratio && *r.exact_ratio == Rational(1, 8 * n);
    d << "n=" << n << " ratio " << (r.exact_ratio ? to_string(*r.exact_ratio) : "?") << "; ";
  }
  const double t = seconds_since(t0);
  d << "time " << fmt(t) << " s";
  return {ok && t < 1.0, d.str()};
}

Outcome bound_dominance() {
  const auto t0 = Clock::now();
  CorpusRng rng(42);
  int passed = 0;
  const int count = 100;
  for (int i = 0; i < count; ++i) {
    const int n = static_cast<int>(rng.uniform(1, 3));
    const int deg = static_cast<int>(rng.uniform(0, 8));
    const Polynomial f = rng.polynomial(n, deg);
    const auto r = solve_min_norm(f, 0, 8);
    if (r.residual_exact && r.exact_ratio && *r.exact_ratio <= Rational(1, 8 * n)) ++passed;
  }
  const double t = seconds_since(t0);
  return {passed == count && t < 30.0,
          std::to_string(passed) + "/" + std::to_string(count) + " exact; time " + fmt(t) + " s"};
}

Outcome operator_norms() {
  const double n1 = operator_norm(1, 0, 20);
  const double n2 = operator_norm(2, 0, 20);
  const double e1 = std::abs(n1 - 1.0 / std::sqrt(8.0));
  const double e2 = std::abs(n2 - 0.25);
  return {e1 <= 1e-10 && e2 <= 1e-10, "n=1 err " + fmt(e1) + "; n=2 err " + fmt(e2)};
}

bool has_kind(const SolveReport& r, KernelFunction::Kind kind) {
  for (const auto& t : r.kernel_terms) {
    if (t.function.kind == kind) return true;
  }
  return false;
}

Outcome kernel_enrichment() {
  const double closed = 1.0 - 2.0 * std::exp(-0.5) / (1.0 + std::exp(-1.0));
  const Polynomial one = Polynomial::constant(1, 1);
  const auto plus = apply_Q(one, QConfig{1, 1, 0, EnrichmentPolicy::Axes, {}});
  const double quad = ratio_by_quadrature(plus, 40);
  const auto minus = apply_Q(one, QConfig{1, -1, 0, EnrichmentPolicy::Axes, {}});
  const bool ok_plus = plus.residual_exact && has_kind(plus, KernelFunction::Kind::Cos) &&
                       std::abs(plus.ratio - closed) <= 1e-10 && std::abs(quad - closed) <= 1e-10 &&
                       std::abs(plus.ratio - quad) <= 1e-10 && plus.ratio <= 0.125 && plus.ratio_unenriched == 1.0;
  const bool ok_minus = minus.residual_exact && has_kind(minus, KernelFunction::Kind::Exp) && minus.ratio <= 0.125;
  return {ok_plus && ok_minus, "a=1 ratio " + fmt(plus.ratio) + " (quadrature " + fmt(quad) + ", unenriched " +
                                   fmt(plus.ratio_unenriched) + "); a=-1 ratio " + fmt(minus.ratio)};
}

Outcome identity_battery() {
  const auto t0 = Clock::now();
  const auto tallies = run_identity_battery(42, 200, 50, worker_threads());
  bool ok = tallies.size() == battery_identities().size();
  std::ostringstream d;
  for (const auto& t : tallies) {
    const int expected = t.identity == "general-weight-commutator" ? 50 : 200;
    ok = ok && t.cases == expected && t.passed == t.cases;
    d << t.identity << " " << t.passed << "/" << t.cases << "; ";
  }
  const double t = seconds_since(t0);
  d << "time " << fmt(t) << " s";
  return {ok && t < 60.0, d.str()};
}

Outcome scaled_weight() {
  const Polynomial one = Polynomial::constant(1, 1);
  const auto r = solve_scaled(one, 0, WeightSpec(1, 2, {Rational(0)}), 0);
  bool ok = r.residual_exact && r.exact_ratio && *r.exact_ratio == Rational(1, 32) && r.bound == Rational(1, 32);
  CorpusRng rng(6);
  bool identical = true;
  for (int i = 0; i < 20; ++i) {
    const int n = static_cast<int>(rng.uniform(1, 3));
    const Polynomial f = rng.polynomial(n, 6);
    const auto unit = solve_scaled(f, 0, WeightSpec::unit(n), 6);
    const auto plain = solve_min_norm(f, 0, 6);
    identical = identical && unit.solution.coeffs == plain.solution.coeffs &&
                unit.solution_poly == plain.solution_poly && unit.exact_ratio == plain.exact_ratio &&
                unit.ratio == plain.ratio;
  }
  return {ok && identical, "ratio " + (r.exact_ratio ? to_string(*r.exact_ratio) : std::string("?")) +
                               "; unit weight identical " + (identical ? "yes" : "no")};
}

Outcome bounded_domain() {
  const BoxDomain box({-1.0}, {1.0});
  const auto r = solve_bounded(SampledFunction::constant(box, 1.0), 0, 30, 1e-10);
  const double expected = std::sqrt(std::exp(4.0) / 8.0) * std::sqrt(2.0);
  const bool ok = std::abs(r.bound_value - expected) <= 1e-8 * expected &&
                  r.u_norm_U <= r.bound_value * (1 + 1e-8) && r.weak_residual <= 1e-6;
  return {ok, "||u||_U " + fmt(r.u_norm_U) + " <= " + fmt(r.bound_value) + " (margin " + fmt(r.margin) +
                  "); weak residual " + fmt(r.weak_residual)};
}

Outcome counterexample() {
  const auto r = growth_counterexample(1000, 0, 0);
  const bool big = !r.growth.empty() && r.growth.back().R == 1000 && r.growth.back().integral > 1e6;
  const bool ok = r.u_at_one_closed == Rational(1, 6) && r.u_at_one_integral == Rational(1, 6) &&
                  r.second_derivative_exact && r.growth_increasing && big && r.weighted_finite &&
                  std::isfinite(r.weighted_integral);
  return {ok, "u(1) " + to_string(r.u_at_one_closed) + " / " + to_string(r.u_at_one_integral) + "; int_1^1000 u^2 " +
                  fmt(r.growth.empty() ? 0.0 : r.growth.back().integral) + "; weighted " +
                  fmt(r.weighted_integral) + " + tail <= " + fmt(r.weighted_tail_bound)};
}

Outcome embeddings() {
  CorpusRng rng(9);
  int passed = 0;
  const int count = 40;
  for (int i = 0; i < count; ++i) {
    const int n = static_cast<int>(rng.uniform(1, 2));
    std::vector<double> lo, hi;
    for (int j = 0; j < n; ++j) {
      const double a = static_cast<double>(rng.uniform(-30, 30)) / 10.0;
      lo.push_back(a);
      hi.push_back(a + static_cast<double>(rng.uniform(1, 30)) / 10.0);
    }
    const BoxDomain box(lo, hi);
    const auto f = i % 2 == 0 ? SampledFunction::polynomial(box, rng.polynomial(n, 4))
                              : SampledFunction::constant(box, static_cast<double>(rng.uniform(-5, 5)));
    if (embedding_check(f, 1e-8).pass) ++passed;
  }
  bool equality = true;
  for (int n = 1; n <= 3; ++n) {
    const auto one = embedding_check(Polynomial::constant(n, 1));
    const double pi_n = std::pow(std::numbers::pi, n / 2.0);
    equality = equality && one.pass && one.sup_sq &&
               std::abs(one.weighted_norm_sq - pi_n * *one.sup_sq) <= 1e-8 * pi_n;
  }
  return {passed == count && equality, std::to_string(passed) + "/" + std::to_string(count) +
                                           " sampled; equality at f=1 " + (equality ? "yes" : "no")};
}

Outcome determinism() {
  auto run = [](std::string& out) {
    const std::string cmd = std::string(GAUSS_RINV_CLI) + " suite --seed 42 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) return -1;
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    const int status = pclose(pipe);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  std::string first, second;
  const int c1 = run(first);
  const int c2 = run(second);
  const bool same = !first.empty() && first == second;
  return {c1 == 0 && c2 == 0 && same,
          "exit " + std::to_string(c1) + "/" + std::to_string(c2) + "; " + std::to_string(first.size()) +
              " bytes; identical " + (same ? "yes" : "no")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"sharp bound at a=0", sharp_bound},
      {"bound dominance over random data", bound_dominance},
      {"operator norm of the truncated inverse", operator_norms},
      {"kernel-enriched bound for a != 0", kernel_enrichment},
      {"identity battery", identity_battery},
      {"scaled weight", scaled_weight},
      {"bounded domain", bounded_domain},
      {"counterexample", counterexample},
      {"embeddings", embeddings},
      {"determinism of the suite report", determinism},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(),
                o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
