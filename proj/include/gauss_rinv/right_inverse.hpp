#pragma once

#include "gauss_rinv/exact_linalg.hpp"
#include "gauss_rinv/gauss_space.hpp"

#include <Eigen/SparseCore>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gauss_rinv {

/// Raised for numerically unusable systems (singular or ill-conditioned Gram
/// matrices). Callers map this to a "numeric failure" outcome.
class NumericFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Delta + a on the Hermite basis {h_m : |m| <= N} (unnormalized).
///
/// Column m holds the expansion of (Delta + a) h_m. Since
/// d^2/dx^2 h_k = 4k(k-1) h_{k-2} for every lambda and centre, the matrix is
/// the same for all weights in the family.
struct OperatorMatrix {
  int dim = 1;
  Rational shift = 0;
  int degree = 0;
  std::vector<MultiIndex> basis;  // ascending grlex
  Eigen::SparseMatrix<Rational> entries;

  Eigen::Index index_of(const MultiIndex& m) const;
  Vector<Rational> coefficients(const HermiteExpansion& e) const;
  HermiteExpansion expansion(const Vector<Rational>& v, const WeightSpec& w) const;
  Vector<Rational> apply(const Vector<Rational>& v) const;
};

OperatorMatrix assemble(int dim, const Rational& a, int degree);

/// An explicit element of ker(Delta + a).
struct KernelFunction {
  enum class Kind { Cos, Sin, Exp, Harmonic };

  Kind kind = Kind::Harmonic;
  std::vector<int> direction;   // lattice direction v of a plane wave
  Rational wave_number_sq = 0;  // |k|^2, with k = sqrt(|k|^2 / |v|^2) v
  Polynomial harmonic{1};       // payload for Kind::Harmonic

  std::vector<double> wave_vector() const;
  bool is_plane_wave() const { return kind != Kind::Harmonic; }

  /// Exact check that (Delta + a) g == 0: |k|^2 == a for trigonometric
  /// waves, |k|^2 == -a for exponentials, Delta p == 0 for harmonics (a = 0).
  bool annihilated_by(const Rational& a) const;

  double evaluate(std::span<const double> x) const;
  std::string describe() const;
};

struct KernelTerm {
  KernelFunction function;
  double coefficient = 0.0;
};

/// Result of one solve of (Delta + a) u = f in L^2(R^n, e^{-lambda|x-x0|^2}).
///
/// The solution is u = u_poly + sum_i c_i g_i with u_poly a polynomial and
/// g_i plane waves from ker(Delta + a). Norms of polynomial quantities are
/// exact; once plane waves are present they are floating point.
struct SolveReport {
  WeightSpec weight;
  Rational shift = 0;
  int truncation = 0;
  Polynomial f{1};

  HermiteExpansion solution;  // polynomial part in the weight-adapted basis
  Polynomial solution_poly{1};
  std::vector<KernelTerm> kernel_terms;

  bool residual_exact = false;
  GaussianScalar f_norm_sq;
  GaussianScalar particular_norm_sq;      // ||u_poly||^2 before enrichment
  std::optional<GaussianScalar> u_norm_sq_exact;
  double u_norm_sq = 0.0;                  // absolute value of ||u||^2
  std::optional<Rational> exact_ratio;
  double ratio = 0.0;
  double ratio_unenriched = 0.0;
  Rational bound = 0;                      // 1 / (8 n lambda^2)
  bool bound_satisfied = false;
  std::string enrichment = "none";
  std::optional<double> gram_condition;
};

/// Minimal-norm (a = 0) or unique polynomial (a != 0) solution for the unit
/// weight. Requires deg f <= degree.
SolveReport solve_min_norm(const Polynomial& f, const Rational& a, int degree);

/// Same, in the basis adapted to an arbitrary Gaussian weight; the verdict uses
/// the bound 1 / (8 n lambda^2).
SolveReport solve_scaled(const Polynomial& f, const Rational& a, const WeightSpec& w, int degree);

enum class EnrichmentPolicy { Auto, None, Axes };

EnrichmentPolicy parse_enrichment(const std::string& name);
const char* to_string(EnrichmentPolicy p);

/// Lattice directions for plane waves: the coordinate axes, plus for Auto
/// the diagonals (1, +-1, ..., +-1). Directions are unique up to sign.
std::vector<std::vector<int>> default_directions(int dim, EnrichmentPolicy policy);

/// Basis of harmonic polynomials of degree <= max_degree, one block per
/// homogeneous degree.
std::vector<Polynomial> harmonic_basis(int dim, int max_degree);

/// Plane waves (a != 0) along the given directions, or harmonic polynomials
/// up to max_harmonic_degree (a = 0).
std::vector<KernelFunction> kernel_basis(const Rational& a, int dim,
                                         const std::vector<std::vector<int>>& directions,
                                         int max_harmonic_degree);

/// Gram matrices above this condition number are refused.
inline constexpr double kMaxGramCondition = 1e12;

/// Removes from the current solution its projection onto span(basis) in the
/// weighted norm. Exact for harmonic polynomials; floating point for plane
/// waves (Gram data from closed-form Gaussian moments).
SolveReport enrich(const SolveReport& report, const std::vector<KernelFunction>& basis);

/// ||u||^2 / ||f||^2 recomputed by tensor Gauss-Hermite quadrature of the
/// assembled u = u_poly + sum c g; an independent check on enrich.
double ratio_by_quadrature(const SolveReport& report, int order);

struct QConfig {
  int dim = 1;
  Rational shift = 0;
  int degree = 0;
  EnrichmentPolicy enrichment = EnrichmentPolicy::Auto;
  std::optional<WeightSpec> weight;  // unit weight when unset
};

/// u = Q f: solve then enrich according to the policy.
SolveReport apply_Q(const Polynomial& f, const QConfig& config);

/// Largest singular value of the truncated Q : P_N -> P_{N+2} in orthonormal
/// coordinates. For a != 0 this is the un-enriched polynomial inverse
/// (Delta + a)^{-1} on P_N.
double operator_norm(int dim, const Rational& a, int degree,
                     EnrichmentPolicy enrichment = EnrichmentPolicy::None);

}  // namespace gauss_rinv
