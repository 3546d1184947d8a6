#include "gauss_rinv/domain_solvers.hpp"

#include "gauss_rinv/quadrature.hpp"
#include "gauss_rinv/weighted_adjoint.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace gauss_rinv {

// --- BoxDomain ----------------------------------------------------------

BoxDomain::BoxDomain(std::vector<double> lo, std::vector<double> hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_.empty() || lo_.size() != hi_.size()) throw std::invalid_argument("box: need matching nonempty bounds");
  for (std::size_t j = 0; j < lo_.size(); ++j) {
    if (!std::isfinite(lo_[j]) || !std::isfinite(hi_[j]) || !(lo_[j] < hi_[j])) {
      throw std::invalid_argument("box: axis " + std::to_string(j) + " needs finite lo < hi");
    }
  }
}

BoxDomain BoxDomain::parse(const std::string& text) {
  std::vector<double> lo, hi;
  std::stringstream axes(text);
  std::string axis;
  while (std::getline(axes, axis, ';')) {
    const auto comma = axis.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("box: expected \"lo,hi\" in \"" + axis + "\"");
    try {
      std::size_t used = 0;
      const std::string a = axis.substr(0, comma), b = axis.substr(comma + 1);
      lo.push_back(std::stod(a, &used));
      if (used != a.size()) throw std::invalid_argument(a);
      hi.push_back(std::stod(b, &used));
      if (used != b.size()) throw std::invalid_argument(b);
    } catch (const std::logic_error&) {
      throw std::invalid_argument("box: malformed bounds \"" + axis + "\"");
    }
  }
  return BoxDomain(std::move(lo), std::move(hi));
}

double BoxDomain::diameter() const {
  double s = 0.0;
  for (std::size_t j = 0; j < lo_.size(); ++j) s += (hi_[j] - lo_[j]) * (hi_[j] - lo_[j]);
  return std::sqrt(s);
}

std::vector<double> BoxDomain::center() const {
  std::vector<double> c(lo_.size());
  for (std::size_t j = 0; j < lo_.size(); ++j) c[j] = 0.5 * (lo_[j] + hi_[j]);
  return c;
}

bool BoxDomain::contains(std::span<const double> x) const {
  if (x.size() != lo_.size()) throw DimensionMismatch("BoxDomain::contains");
  for (std::size_t j = 0; j < lo_.size(); ++j) {
    if (x[j] < lo_[j] || x[j] > hi_[j]) return false;
  }
  return true;
}

std::string BoxDomain::to_string() const {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t j = 0; j < lo_.size(); ++j) os << (j ? ";" : "") << lo_[j] << "," << hi_[j];
  return os.str();
}

// --- SampledFunction ----------------------------------------------------

SampledFunction::SampledFunction(BoxDomain domain, Callback f, std::string description)
    : domain_(std::move(domain)), f_(std::move(f)), description_(std::move(description)) {}

SampledFunction SampledFunction::constant(const BoxDomain& box, double value) {
  std::ostringstream os;
  os.precision(17);
  os << "const:" << value;
  return SampledFunction(box, [value](std::span<const double>) { return value; }, os.str());
}

SampledFunction SampledFunction::polynomial(const BoxDomain& box, const Polynomial& p) {
  require_same_dim(box.dim(), p.dim(), "SampledFunction::polynomial");
  auto pd = p.cast<double>();
  return SampledFunction(box, [pd](std::span<const double> x) { return pd.evaluate(x); }, "poly:" + p.to_string());
}

SampledFunction SampledFunction::grid(const BoxDomain& box, std::vector<int> shape, std::vector<double> samples) {
  if (static_cast<int>(shape.size()) != box.dim()) throw DimensionMismatch("grid: shape rank differs from box");
  std::size_t total = 1;
  for (int s : shape) {
    if (s < 2) throw std::invalid_argument("grid: need at least 2 samples per axis");
    total *= static_cast<std::size_t>(s);
  }
  if (samples.size() != total) throw std::invalid_argument("grid: sample count does not match shape");
  auto eval = [box, shape, samples = std::move(samples)](std::span<const double> x) {
    const std::size_t n = shape.size();
    std::vector<std::size_t> base(n);
    std::vector<double> frac(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double h = (box.hi()[j] - box.lo()[j]) / (shape[j] - 1);
      double t = std::clamp((x[j] - box.lo()[j]) / h, 0.0, double(shape[j] - 1));
      auto i = std::min(static_cast<std::size_t>(t), static_cast<std::size_t>(shape[j] - 2));
      base[j] = i;
      frac[j] = t - double(i);
    }
    double value = 0.0;
    for (std::size_t corner = 0; corner < (std::size_t{1} << n); ++corner) {
      double weight = 1.0;
      std::size_t flat = 0;
      for (std::size_t j = 0; j < n; ++j) {
        const bool up = (corner >> j) & 1;
        weight *= up ? frac[j] : 1.0 - frac[j];
        flat = flat * static_cast<std::size_t>(shape[j]) + base[j] + (up ? 1 : 0);
      }
      if (weight != 0.0) value += weight * samples[flat];
    }
    return value;
  };
  return SampledFunction(box, std::move(eval), "grid");
}

double SampledFunction::operator()(std::span<const double> x) const {
  return domain_.contains(x) ? f_(x) : 0.0;
}

// --- quadrature over boxes ----------------------------------------------

namespace {

using boost::math::quadrature::gauss_kronrod;

double integrate_axis(const std::function<double(std::span<const double>)>& f, const BoxDomain& box,
                      std::vector<double>& x, std::size_t axis, double tol) {
  auto inner = [&](double t) {
    x[axis] = t;
    if (axis + 1 == x.size()) return f(x);
    return integrate_axis(f, box, x, axis + 1, tol);
  };
  return gauss_kronrod<double, 21>::integrate(inner, box.lo()[axis], box.hi()[axis], 15, tol);
}

// h_k(x - c) for k = 0..max, unit-weight recurrence h_{k+1} = 2t h_k - 2k h_{k-1}.
void hermite_values(double t, int max, std::vector<double>& out) {
  out.assign(static_cast<std::size_t>(max) + 1, 0.0);
  out[0] = 1.0;
  if (max >= 1) out[1] = 2.0 * t;
  for (int k = 1; k < max; ++k) out[k + 1] = 2.0 * t * out[k] - 2.0 * k * out[k - 1];
}

double evaluate_expansion(const HermiteExpansion& e, std::span<const double> x, const std::vector<double>& center) {
  const int top = std::max(e.degree(), 0);
  std::vector<std::vector<double>> axis(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) hermite_values(x[j] - center[j], top, axis[j]);
  double value = 0.0;
  for (const auto& [m, c] : e.coeffs) {
    double term = to_double(c);
    for (std::size_t j = 0; j < x.size(); ++j) term *= axis[j][static_cast<std::size_t>(m[static_cast<int>(j)])];
    value += term;
  }
  return value;
}

double gaussian(std::span<const double> x, const std::vector<double>& center) {
  double r = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) r += (x[j] - center[j]) * (x[j] - center[j]);
  return std::exp(-r);
}

}  // namespace

double integrate_box(const std::function<double(std::span<const double>)>& f, const BoxDomain& box, double tol) {
  std::vector<double> x(static_cast<std::size_t>(box.dim()));
  return integrate_axis(f, box, x, 0, tol);
}

// --- bounded-domain solve -----------------------------------------------

BoundedReport solve_bounded(const SampledFunction& f, const Rational& a, int degree, double quad_tol,
                            EnrichmentPolicy enrichment) {
  if (degree < 0) throw std::invalid_argument("solve_bounded: truncation degree must be >= 0");
  if (!(quad_tol > 0)) throw std::invalid_argument("solve_bounded: quadrature tolerance must be positive");
  const BoxDomain& box = f.domain();
  const int n = box.dim();
  const std::vector<double> center = box.center();
  std::vector<Rational> exact_center;
  for (double c : center) exact_center.push_back(from_double(c));
  const WeightSpec w(n, 1, exact_center);
  const double pi_unit = std::pow(std::numbers::pi, n / 2.0);

  // Hermite coefficients of the zero extension; the integrand is smooth on U,
  // so integrating over U alone avoids the jump at the boundary.
  const auto basis = indices_up_to(n, degree);
  HermiteExpansion projected{w, {}};
  std::vector<double> f_dot_psi(basis.size());
  std::vector<double> psi_norm_sq(basis.size());
  std::vector<double> hv;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const MultiIndex& m = basis[i];
    auto integrand = [&](std::span<const double> x) {
      double h = 1.0;
      for (int j = 0; j < n; ++j) {
        hermite_values(x[static_cast<std::size_t>(j)] - center[static_cast<std::size_t>(j)], m[j], hv);
        h *= hv.back();
      }
      return f.inside(x) * h * gaussian(x, center);
    };
    f_dot_psi[i] = integrate_box(integrand, box, quad_tol);
    psi_norm_sq[i] = to_double(basis_norm_sq(m, 1)) * pi_unit;
    projected.add(m, from_double(f_dot_psi[i] / psi_norm_sq[i]));
  }

  BoundedReport r{box, center, degree, quad_tol, {}, 0, 0, 0, false, 0, 0, 0, 0, 0, false, 0, false};
  r.solve = solve_scaled(hermite_to_monomial(projected), a, w, degree);
  if (a != 0 && enrichment != EnrichmentPolicy::None && !r.solve.f.is_zero()) {
    r.solve = enrich(r.solve, kernel_basis(a, n, default_directions(n, enrichment), 0));
  }
  const SolveReport& s = r.solve;

  auto u = [&](std::span<const double> x) {
    double v = evaluate_expansion(s.solution, x, center);
    for (const auto& t : s.kernel_terms) v += t.coefficient * t.function.evaluate(x);
    return v;
  };

  r.f_weighted_norm_sq = integrate_box(
      [&](std::span<const double> x) {
        const double v = f.inside(x);
        return v * v * gaussian(x, center);
      },
      box, quad_tol);
  r.weighted_bound = 1.0 / (8.0 * n);
  r.weighted_ratio = r.f_weighted_norm_sq > 0 ? s.u_norm_sq / r.f_weighted_norm_sq : 0.0;
  r.weighted_satisfied = r.weighted_ratio <= r.weighted_bound * (1 + kEmbeddingTolerance);

  r.u_norm_U = std::sqrt(integrate_box(
      [&](std::span<const double> x) {
        const double v = u(x);
        return v * v;
      },
      box, quad_tol));
  r.f_norm_U = std::sqrt(integrate_box(
      [&](std::span<const double> x) {
        const double v = f.inside(x);
        return v * v;
      },
      box, quad_tol));
  const double diam = box.diameter();
  r.constant = std::sqrt(std::exp(diam * diam) / (8.0 * n));
  r.bound_value = r.constant * r.f_norm_U;
  r.margin = r.bound_value - r.u_norm_U;
  r.bound_satisfied = r.u_norm_U <= r.bound_value * (1 + kEmbeddingTolerance);

  // Weak residual against psi = h_m: <u, H*psi> - <f~, psi>.
  const AdjointConfig cfg{w.as_polynomial(), a};
  const double u_norm = std::sqrt(s.u_norm_sq);
  const double f_norm = std::sqrt(r.f_weighted_norm_sq);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Polynomial adj = formal_adjoint(hermite_basis_polynomial(basis[i], w), cfg);
    double lhs = inner_product(s.solution_poly, adj, w).to_double();
    for (const auto& t : s.kernel_terms) {
      const auto k = t.function.wave_vector();
      const WaveKind kind = t.function.kind == KernelFunction::Kind::Cos   ? WaveKind::Cos
                            : t.function.kind == KernelFunction::Kind::Sin ? WaveKind::Sin
                                                                           : WaveKind::Exp;
      lhs += t.coefficient * weighted_wave_moment(adj, k, kind, w);
    }
    const double scale = std::max(u_norm * std::sqrt(norm_sq(adj, w).to_double()), f_norm * std::sqrt(psi_norm_sq[i]));
    if (scale > 0) r.weak_residual = std::max(r.weak_residual, std::abs(lhs - f_dot_psi[i]) / scale);
  }
  r.residual_ok = r.weak_residual <= kWeakResidualTolerance;
  return r;
}

// --- embeddings ---------------------------------------------------------

namespace {

EmbeddingReport finish_embedding(EmbeddingReport r) {
  const double tol = kEmbeddingTolerance * std::max(1.0, r.weighted_norm_sq);
  if (r.l2_norm_sq) r.l2_holds = r.weighted_norm_sq <= *r.l2_norm_sq + tol;
  if (r.sup_sq) r.sup_holds = r.weighted_norm_sq <= std::pow(std::numbers::pi, r.dim / 2.0) * *r.sup_sq + tol;
  if (!r.l2_holds && !r.sup_holds) throw std::invalid_argument("embedding_check: f has neither finite L^2 nor sup norm");
  r.pass = r.l2_holds.value_or(true) && r.sup_holds.value_or(true);
  return r;
}

}  // namespace

EmbeddingReport embedding_check(const SampledFunction& f, double quad_tol) {
  const BoxDomain& box = f.domain();
  const std::vector<double> origin(static_cast<std::size_t>(box.dim()), 0.0);
  EmbeddingReport r;
  r.dim = box.dim();
  r.weighted_norm_sq = integrate_box(
      [&](std::span<const double> x) {
        const double v = f.inside(x);
        return v * v * gaussian(x, origin);
      },
      box, quad_tol);
  r.l2_norm_sq = integrate_box(
      [&](std::span<const double> x) {
        const double v = f.inside(x);
        return v * v;
      },
      box, quad_tol);

  // Sampled sup over a uniform grid including the corners.
  const int per_axis = r.dim == 1 ? 2001 : r.dim == 2 ? 201 : 41;
  std::vector<int> counter(static_cast<std::size_t>(r.dim), 0);
  std::vector<double> x(static_cast<std::size_t>(r.dim));
  double sup = 0.0;
  while (true) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      x[j] = box.lo()[j] + (box.hi()[j] - box.lo()[j]) * counter[j] / (per_axis - 1);
    }
    sup = std::max(sup, std::abs(f.inside(x)));
    std::size_t j = 0;
    while (j < counter.size() && ++counter[j] == per_axis) counter[j++] = 0;
    if (j == counter.size()) break;
  }
  r.sup_sq = sup * sup;
  return finish_embedding(r);
}

EmbeddingReport embedding_check(const Polynomial& f) {
  EmbeddingReport r;
  r.dim = f.dim();
  r.weighted_norm_sq = norm_sq(f, WeightSpec::unit(f.dim())).to_double();
  if (f.is_zero()) r.l2_norm_sq = 0.0;
  if (f.degree() <= 0) {
    const double c = f.is_zero() ? 0.0 : to_double(f.coefficient(MultiIndex(std::vector<int>(static_cast<std::size_t>(f.dim()), 0))));
    r.sup_sq = c * c;
  }
  return finish_embedding(r);
}

// --- counterexample -----------------------------------------------------

void LogPolynomial::add_term(int p, int q, const Rational& c) {
  if (q < 0) throw std::invalid_argument("LogPolynomial: negative log power");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace({p, q}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

LogPolynomial LogPolynomial::derivative() const {
  LogPolynomial d;
  for (const auto& [key, c] : terms_) {
    const auto [p, q] = key;
    d.add_term(p - 1, q, c * p);
    if (q > 0) d.add_term(p - 1, q - 1, c * q);
  }
  return d;
}

double LogPolynomial::evaluate(double x) const {
  if (!(x > 0)) throw std::domain_error("LogPolynomial: x must be positive");
  const double lx = std::log(x);
  double v = 0.0;
  for (const auto& [key, c] : terms_) v += to_double(c) * std::pow(x, key.first) * std::pow(lx, key.second);
  return v;
}

Rational LogPolynomial::at_one() const {
  Rational v = 0;
  for (const auto& [key, c] : terms_) {
    if (key.second == 0) v += c;
  }
  return v;
}

std::string LogPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [key, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += "(" + gauss_rinv::to_string(c) + ")";
    if (key.first != 0) s += "*x^" + std::to_string(key.first);
    if (key.second == 1) s += "*ln(x)";
    if (key.second > 1) s += "*ln(x)^" + std::to_string(key.second);
  }
  return s;
}

CounterexampleReport growth_counterexample(double R, const Rational& c1, const Rational& c2) {
  if (!(R >= 1.0) || !std::isfinite(R)) throw std::invalid_argument("counterexample: R must be >= 1");
  CounterexampleReport r;
  r.R = R;
  r.c1 = c1;
  r.c2 = c2;
  r.u.add_term(1, 0, Rational(-1, 2) + c1);
  r.u.add_term(1, 1, 1);
  r.u.add_term(0, 0, Rational(2, 3) + c2);
  r.u_second = r.u.derivative().derivative();
  LogPolynomial inverse_x;
  inverse_x.add_term(-1, 0, 1);
  r.second_derivative_exact = r.u_second == inverse_x;
  for (int i = 0; i < 1000; ++i) {
    const double x = 1.0 + (R - 1.0) * i / 999.0;
    r.max_second_derivative_error = std::max(r.max_second_derivative_error, std::abs(r.u_second.evaluate(x) - 1.0 / x));
  }

  r.u_at_one_closed = r.u.at_one();
  // int_0^1 (1 - t) t dt, term by term
  const Polynomial t = Polynomial::variable(1, 0);
  const Polynomial kernel = (Polynomial::constant(1, 1) - t) * t;
  r.u_at_one_integral = c1 + c2;
  for (const auto& [m, c] : kernel.terms()) r.u_at_one_integral += c / (m[0] + 1);

  const double c1d = to_double(c1), c2d = to_double(c2);
  auto integral_formula = [&](double x) {
    const double near = x / 2.0 - 1.0 / 3.0;  // int_0^1 (x - t) t dt
    const double far = gauss_kronrod<double, 31>::integrate([x](double t) { return (x - t) / t; }, 1.0, x, 20, 1e-15);
    return near + far + c1d * x + c2d;
  };
  for (int i = 0; i < 50; ++i) {
    const double x = 1.0 + 19.0 * i / 49.0;
    const double closed = r.u.evaluate(x);
    r.max_formula_error = std::max(r.max_formula_error, std::abs(closed - integral_formula(x)) / std::max(1.0, std::abs(closed)));
  }

  auto u_sq = [&](double x) {
    const double v = r.u.evaluate(x);
    return v * v;
  };
  for (int j = 2; j >= 0; --j) {
    const double upper = R * std::pow(10.0, -j);
    if (upper < 1.0 || (!r.growth.empty() && upper == r.growth.back().R)) continue;
    r.growth.push_back({upper, gauss_kronrod<double, 31>::integrate(u_sq, 1.0, upper, 20, 1e-13)});
  }
  r.growth_increasing = true;
  for (std::size_t i = 1; i < r.growth.size(); ++i) {
    r.growth_increasing = r.growth_increasing && r.growth[i].integral > r.growth[i - 1].integral;
  }

  // |u| <= K x^2 on [1, inf) and x^4 e^{-x^2/2} <= 16 e^{-2}, so the tail past
  // T is at most K^2 16 e^{-2} e^{-T^2/2} / T.
  double K = 0.0;
  for (const auto& [key, c] : r.u.terms()) K += std::abs(to_double(c));
  r.weighted_cutoff = 10.0;
  const double T = r.weighted_cutoff;
  r.weighted_integral = gauss_kronrod<double, 31>::integrate(
      [&](double x) { return u_sq(x) * std::exp(-x * x); }, 1.0, T, 20, 1e-13);
  r.weighted_tail_bound = K * K * 16.0 * std::exp(-2.0) * std::exp(-T * T / 2.0) / T;
  r.weighted_finite = std::isfinite(r.weighted_integral + r.weighted_tail_bound);
  return r;
}

}  // namespace gauss_rinv
