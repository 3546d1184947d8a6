#pragma once

#include "gauss_rinv/right_inverse.hpp"

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gauss_rinv {

/// Axis-aligned box prod_j [lo_j, hi_j] with lo_j < hi_j.
class BoxDomain {
 public:
  BoxDomain(std::vector<double> lo, std::vector<double> hi);

  /// "lo1,hi1;lo2,hi2;..."
  static BoxDomain parse(const std::string& text);

  int dim() const { return static_cast<int>(lo_.size()); }
  const std::vector<double>& lo() const { return lo_; }
  const std::vector<double>& hi() const { return hi_; }
  double diameter() const;
  std::vector<double> center() const;
  bool contains(std::span<const double> x) const;
  std::string to_string() const;

 private:
  std::vector<double> lo_, hi_;
};

/// A function on a box, extended by zero outside it.
class SampledFunction {
 public:
  using Callback = std::function<double(std::span<const double>)>;

  SampledFunction(BoxDomain domain, Callback f, std::string description);

  static SampledFunction constant(const BoxDomain& box, double value);
  static SampledFunction polynomial(const BoxDomain& box, const Polynomial& p);
  /// Multilinear interpolation of samples on a uniform grid covering the box,
  /// stored row-major with the last axis fastest.
  static SampledFunction grid(const BoxDomain& box, std::vector<int> shape, std::vector<double> samples);

  const BoxDomain& domain() const { return domain_; }
  const std::string& description() const { return description_; }
  /// Zero outside the box.
  double operator()(std::span<const double> x) const;
  /// Only meaningful inside the box.
  double inside(std::span<const double> x) const { return f_(x); }

 private:
  BoxDomain domain_;
  Callback f_;
  std::string description_;
};

/// Nested adaptive Gauss-Kronrod over the box; tol is relative per axis.
double integrate_box(const std::function<double(std::span<const double>)>& f, const BoxDomain& box,
                     double tol = 1e-10);

inline constexpr double kWeakResidualTolerance = 1e-6;

struct BoundedReport {
  BoxDomain domain;
  std::vector<double> center;
  int degree = 0;
  double quad_tol = 1e-10;
  SolveReport solve;  // the extended problem in L^2(R^n, e^{-|x - x0|^2})

  double f_weighted_norm_sq = 0.0;  // ||f~||^2 in the weighted space
  double weighted_ratio = 0.0;      // ||u||^2 / ||f~||^2
  double weighted_bound = 0.0;      // 1 / (8n)
  bool weighted_satisfied = false;

  double u_norm_U = 0.0;  // ||u||_{L^2(U)}
  double f_norm_U = 0.0;  // ||f||_{L^2(U)}
  double constant = 0.0;  // sqrt(e^{|U|^2} / (8n))
  double bound_value = 0.0;
  double margin = 0.0;    // bound_value - u_norm_U
  bool bound_satisfied = false;

  double weak_residual = 0.0;
  bool residual_ok = false;
};

/// Projects the zero extension of f onto {h_m : |m| <= N} for the unit weight
/// centred at the box centre, solves exactly, and checks the box estimate.
BoundedReport solve_bounded(const SampledFunction& f, const Rational& a, int degree, double quad_tol = 1e-10,
                            EnrichmentPolicy enrichment = EnrichmentPolicy::Auto);

struct EmbeddingReport {
  int dim = 1;
  double weighted_norm_sq = 0.0;
  std::optional<double> l2_norm_sq;   // unset when infinite
  std::optional<double> sup_sq;       // unset when infinite
  std::optional<bool> l2_holds;       // weighted <= l2
  std::optional<bool> sup_holds;      // weighted <= pi^{n/2} sup^2
  bool pass = false;
};

inline constexpr double kEmbeddingTolerance = 1e-8;

/// Compactly supported f: norms by quadrature over its box, sup on a sample grid.
EmbeddingReport embedding_check(const SampledFunction& f, double quad_tol = 1e-10);
/// f on all of R^n: weighted norm exact; L^2 and sup finite only in the trivial cases.
EmbeddingReport embedding_check(const Polynomial& f);

/// Finite sums of c x^p (ln x)^q on x > 0.
class LogPolynomial {
 public:
  using Key = std::pair<int, int>;  // (p, q)

  void add_term(int p, int q, const Rational& c);
  const std::map<Key, Rational>& terms() const { return terms_; }
  LogPolynomial derivative() const;
  double evaluate(double x) const;
  /// Exact value at x = 1, where every log term vanishes.
  Rational at_one() const;
  bool operator==(const LogPolynomial&) const = default;
  std::string to_string() const;

 private:
  std::map<Key, Rational> terms_;
};

struct GrowthSample {
  double R = 0.0;
  double integral = 0.0;
};

struct CounterexampleReport {
  double R = 1.0;
  Rational c1 = 0, c2 = 0;
  LogPolynomial u;
  LogPolynomial u_second;
  bool second_derivative_exact = false;  // u'' == 1/x symbolically
  double max_second_derivative_error = 0.0;
  Rational u_at_one_closed = 0;
  Rational u_at_one_integral = 0;
  double max_formula_error = 0.0;  // closed form vs integral formula on [1, 20]
  std::vector<GrowthSample> growth;  // int_1^R u^2 dx
  bool growth_increasing = false;
  double weighted_integral = 0.0;     // int_1^T u^2 e^{-x^2} dx
  double weighted_tail_bound = 0.0;   // bound on int_T^inf
  double weighted_cutoff = 0.0;       // T
  bool weighted_finite = false;
};

/// u = int_0^x (x - t) f(t) dt + c1 x + c2 with f = 1/x on [1, inf), x on (0, 1).
CounterexampleReport growth_counterexample(double R, const Rational& c1, const Rational& c2);

}  // namespace gauss_rinv
