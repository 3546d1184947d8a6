#pragma once

#include "gauss_rinv/gauss_space.hpp"

#include <string>

namespace gauss_rinv {

/// H = Delta + shift acting in L^2(R^n, e^{-weight}).
struct AdjointConfig {
  Polynomial weight;
  Rational shift = 0;

  static AdjointConfig unit(int n, Rational a = 0) {
    return {Polynomial::squared_norm(n), std::move(a)};
  }
};

/// Formal adjoint of the Laplacian with respect to <.,.>_weight:
///   Delta*_phi psi = Delta psi + psi |grad phi|^2 - psi Delta phi - 2 grad psi . grad phi
Polynomial laplacian_adjoint(const Polynomial& psi, const Polynomial& weight);

/// (Delta + a)*_phi psi = Delta*_phi psi + a psi.
Polynomial formal_adjoint(const Polynomial& psi, const AdjointConfig& cfg);

/// (Delta + a) psi.
Polynomial apply_operator(const Polynomial& psi, const Rational& a);

enum class CommutatorMethod {
  Direct,         // Delta(Delta* psi) - Delta*(Delta psi)
  GeneralWeight,  // closed expansion valid for any polynomial weight
  Reduced,        // 8n psi + 16 grad psi . x - 8 Delta psi, weight |x|^2 only
};

const char* to_string(CommutatorMethod m);

/// Delta(Delta*_phi psi) - Delta*_phi(Delta psi). Throws std::invalid_argument
/// if Reduced is requested for a weight other than |x|^2.
Polynomial commutator(const Polynomial& psi, const Polynomial& weight, CommutatorMethod method);

/// Outcome of one exact identity or inequality check.
struct IdentityReport {
  std::string identity;
  std::string relation;  // "==", "<=" or ">="
  GaussianScalar lhs;
  GaussianScalar rhs;
  bool pass = false;
};

/// <psi, [Delta, Delta*] psi> == 8n ||psi||^2 + 8 ||grad psi||^2 for phi = |x|^2.
IdentityReport verify_commutator_integral(const Polynomial& psi);

/// ||H* psi||^2 == ||H psi||^2 + <psi, [Delta, Delta*] psi> for phi = lambda|x - x0|^2.
IdentityReport verify_adjoint_norm_identity(const Polynomial& psi, const Rational& a, const WeightSpec& w);

/// ||H* psi||^2 >= 8n ||psi||^2 for phi = |x|^2.
IdentityReport verify_coercivity(const Polynomial& psi, const Rational& a);

/// |<f, psi>|^2 <= (||f||^2 / 8n) ||H* psi||^2 for phi = |x|^2. Both sides
/// carry the squared Gaussian unit.
IdentityReport verify_duality(const Polynomial& f, const Polynomial& psi, const Rational& a);

/// <psi, Delta u>_w == <Delta*_w psi, u>_w.
IdentityReport verify_adjointness(const Polynomial& psi, const Polynomial& u, const WeightSpec& w);

}  // namespace gauss_rinv
