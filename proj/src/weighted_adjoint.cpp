#include "gauss_rinv/weighted_adjoint.hpp"

#include <stdexcept>

namespace gauss_rinv {

Polynomial laplacian_adjoint(const Polynomial& psi, const Polynomial& weight) {
  require_same_dim(psi.dim(), weight.dim(), "laplacian_adjoint");
  const auto grad_phi = weight.gradient();
  const Polynomial grad_phi_sq = dot(grad_phi, grad_phi);
  return psi.laplacian() + psi * grad_phi_sq - psi * weight.laplacian() -
         dot(psi.gradient(), grad_phi) * Rational(2);
}

Polynomial formal_adjoint(const Polynomial& psi, const AdjointConfig& cfg) {
  return laplacian_adjoint(psi, cfg.weight) + psi * cfg.shift;
}

Polynomial apply_operator(const Polynomial& psi, const Rational& a) {
  return psi.laplacian() + psi * a;
}

const char* to_string(CommutatorMethod m) {
  switch (m) {
    case CommutatorMethod::Direct: return "direct";
    case CommutatorMethod::GeneralWeight: return "general-weight";
    case CommutatorMethod::Reduced: return "reduced";
  }
  return "?";
}

Polynomial commutator(const Polynomial& psi, const Polynomial& weight, CommutatorMethod method) {
  require_same_dim(psi.dim(), weight.dim(), "commutator");
  const int n = psi.dim();
  switch (method) {
    case CommutatorMethod::Direct:
      return laplacian_adjoint(psi, weight).laplacian() -
             laplacian_adjoint(psi.laplacian(), weight);

    case CommutatorMethod::GeneralWeight: {
      const auto grad_phi = weight.gradient();
      const auto grad_psi = psi.gradient();
      const Polynomial grad_phi_sq = dot(grad_phi, grad_phi);
      const Polynomial lap_phi = weight.laplacian();
      return psi * grad_phi_sq.laplacian() + dot(grad_psi, grad_phi_sq.gradient()) * Rational(2) -
             psi * lap_phi.laplacian() - dot(grad_psi, lap_phi.gradient()) * Rational(2) -
             dot(grad_psi, grad_phi).laplacian() * Rational(2) +
             dot(psi.laplacian().gradient(), grad_phi) * Rational(2);
    }

    case CommutatorMethod::Reduced:
      if (!(weight == Polynomial::squared_norm(n))) {
        throw std::invalid_argument("commutator: reduced form requires the weight |x|^2");
      }
      return psi * Rational(8 * n) + euler_operator(psi) * Rational(16) -
             psi.laplacian() * Rational(8);
  }
  throw std::invalid_argument("commutator: unknown method");
}

IdentityReport verify_commutator_integral(const Polynomial& psi) {
  const int n = psi.dim();
  const WeightSpec w = WeightSpec::unit(n);
  const Polynomial phi = w.as_polynomial();
  IdentityReport r;
  r.identity = "commutator-integral";
  r.relation = "==";
  r.lhs = inner_product(psi, commutator(psi, phi, CommutatorMethod::Direct), w);
  r.rhs = norm_sq(psi, w) * Rational(8 * n) + norm_sq(psi.gradient(), w) * Rational(8);
  r.pass = r.lhs == r.rhs;
  return r;
}

IdentityReport verify_adjoint_norm_identity(const Polynomial& psi, const Rational& a, const WeightSpec& w) {
  require_same_dim(psi.dim(), w.dim, "verify_adjoint_norm_identity");
  const Polynomial phi = w.as_polynomial();
  IdentityReport r;
  r.identity = "adjoint-norm-identity";
  r.relation = "==";
  r.lhs = norm_sq(formal_adjoint(psi, {phi, a}), w);
  r.rhs = norm_sq(apply_operator(psi, a), w) +
          inner_product(psi, commutator(psi, phi, CommutatorMethod::Direct), w);
  r.pass = r.lhs == r.rhs;
  return r;
}

IdentityReport verify_coercivity(const Polynomial& psi, const Rational& a) {
  const int n = psi.dim();
  const WeightSpec w = WeightSpec::unit(n);
  IdentityReport r;
  r.identity = "coercivity";
  r.relation = ">=";
  r.lhs = norm_sq(formal_adjoint(psi, AdjointConfig::unit(n, a)), w);
  r.rhs = norm_sq(psi, w) * Rational(8 * n);
  r.pass = r.lhs >= r.rhs;
  return r;
}

IdentityReport verify_duality(const Polynomial& f, const Polynomial& psi, const Rational& a) {
  require_same_dim(f.dim(), psi.dim(), "verify_duality");
  const int n = psi.dim();
  const WeightSpec w = WeightSpec::unit(n);
  const GaussianScalar pairing = inner_product(f, psi, w);
  IdentityReport r;
  r.identity = "duality";
  r.relation = "<=";
  r.lhs = pairing * pairing;
  r.rhs = (norm_sq(f, w) * Rational(1, 8 * n)) *
          norm_sq(formal_adjoint(psi, AdjointConfig::unit(n, a)), w);
  r.pass = r.lhs <= r.rhs;
  return r;
}

IdentityReport verify_adjointness(const Polynomial& psi, const Polynomial& u, const WeightSpec& w) {
  require_same_dim(psi.dim(), u.dim(), "verify_adjointness");
  require_same_dim(psi.dim(), w.dim, "verify_adjointness");
  IdentityReport r;
  r.identity = "adjointness";
  r.relation = "==";
  r.lhs = inner_product(psi, u.laplacian(), w);
  r.rhs = inner_product(laplacian_adjoint(psi, w.as_polynomial()), u, w);
  r.pass = r.lhs == r.rhs;
  return r;
}

}  // namespace gauss_rinv
