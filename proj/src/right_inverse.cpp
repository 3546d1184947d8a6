#include "gauss_rinv/right_inverse.hpp"

#include "gauss_rinv/quadrature.hpp"
#include "gauss_rinv/weighted_adjoint.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

namespace gauss_rinv {

// --- OperatorMatrix -------------------------------------------------------

Eigen::Index OperatorMatrix::index_of(const MultiIndex& m) const {
  auto it = std::lower_bound(basis.begin(), basis.end(), m, GrlexLess{});
  if (it == basis.end() || !(*it == m)) {
    throw std::out_of_range("OperatorMatrix: multi-index outside the truncated basis");
  }
  return static_cast<Eigen::Index>(it - basis.begin());
}

Vector<Rational> OperatorMatrix::coefficients(const HermiteExpansion& e) const {
  Vector<Rational> v = Vector<Rational>::Constant(static_cast<Eigen::Index>(basis.size()), Rational(0));
  for (const auto& [m, c] : e.coeffs) v(index_of(m)) = c;
  return v;
}

HermiteExpansion OperatorMatrix::expansion(const Vector<Rational>& v, const WeightSpec& w) const {
  HermiteExpansion e{w, {}};
  for (Eigen::Index i = 0; i < v.size(); ++i) e.add(basis[static_cast<std::size_t>(i)], v(i));
  return e;
}

Vector<Rational> OperatorMatrix::apply(const Vector<Rational>& v) const {
  if (v.size() != entries.cols()) throw DimensionMismatch("OperatorMatrix::apply: length mismatch");
  Vector<Rational> out = Vector<Rational>::Constant(entries.rows(), Rational(0));
  for (Eigen::Index col = 0; col < entries.outerSize(); ++col) {
    if (v(col) == 0) continue;
    for (Eigen::SparseMatrix<Rational>::InnerIterator it(entries, col); it; ++it) {
      out(it.row()) += it.value() * v(col);
    }
  }
  return out;
}

OperatorMatrix assemble(int dim, const Rational& a, int degree) {
  if (degree < 0) throw std::invalid_argument("assemble: truncation degree must be >= 0");
  OperatorMatrix op;
  op.dim = dim;
  op.shift = a;
  op.degree = degree;
  op.basis = indices_up_to(dim, degree);
  const auto size = static_cast<Eigen::Index>(op.basis.size());

  std::vector<Eigen::Triplet<Rational>> triplets;
  for (Eigen::Index col = 0; col < size; ++col) {
    const MultiIndex& m = op.basis[static_cast<std::size_t>(col)];
    if (a != 0) triplets.emplace_back(col, col, a);
    for (int j = 0; j < dim; ++j) {
      const int k = m[j];
      if (k < 2) continue;
      MultiIndex lowered = m;
      lowered[j] = k - 2;
      triplets.emplace_back(op.index_of(lowered), col, Rational(4 * k * (k - 1)));
    }
  }
  op.entries.resize(size, size);
  op.entries.setFromTriplets(triplets.begin(), triplets.end());
  return op;
}

// --- solves -------------------------------------------------------------

namespace {

// Laplacian block from total degree d + 2 (columns) to d (rows).
Matrix<Rational> laplacian_block(const std::vector<MultiIndex>& rows,
                                 const std::vector<MultiIndex>& cols) {
  Matrix<Rational> a = Matrix<Rational>::Constant(static_cast<Eigen::Index>(rows.size()),
                                                  static_cast<Eigen::Index>(cols.size()), Rational(0));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const MultiIndex& m = cols[c];
    for (int j = 0; j < m.dim(); ++j) {
      const int k = m[j];
      if (k < 2) continue;
      MultiIndex lowered = m;
      lowered[j] = k - 2;
      auto it = std::lower_bound(rows.begin(), rows.end(), lowered, GrlexLess{});
      a(static_cast<Eigen::Index>(it - rows.begin()), static_cast<Eigen::Index>(c)) = Rational(4 * k * (k - 1));
    }
  }
  return a;
}

// Minimal-norm right inverse of the degree-d Laplacian block,
//   Q_d = B^{-1} A^T (A B^{-1} A^T)^{-1},
// with B = diag ||h_c||^2 the Gram matrix of the (orthogonal) basis.
struct DegreeBlock {
  std::vector<MultiIndex> rows;  // degree d
  std::vector<MultiIndex> cols;  // degree d + 2
  Matrix<Rational> a;
  Vector<Rational> inv_gram;     // 1 / ||h_c||^2 per column
};

DegreeBlock make_block(int dim, int d, const Rational& lambda) {
  DegreeBlock b;
  b.rows = indices_of_degree(dim, d);
  b.cols = indices_of_degree(dim, d + 2);
  b.a = laplacian_block(b.rows, b.cols);
  b.inv_gram.resize(static_cast<Eigen::Index>(b.cols.size()));
  for (std::size_t c = 0; c < b.cols.size(); ++c) {
    b.inv_gram(static_cast<Eigen::Index>(c)) = Rational(1) / basis_norm_sq(b.cols[c], lambda);
  }
  return b;
}

Matrix<Rational> normal_matrix(const DegreeBlock& b) {
  const Matrix<Rational> scaled = b.a * b.inv_gram.asDiagonal();
  return scaled * b.a.transpose();
}

HermiteExpansion min_norm_laplacian(const HermiteExpansion& rhs, int degree) {
  const WeightSpec& w = rhs.weight;
  HermiteExpansion u{w, {}};
  for (int d = 0; d <= degree; ++d) {
    DegreeBlock block = make_block(w.dim, d, w.lambda);
    Vector<Rational> f(static_cast<Eigen::Index>(block.rows.size()));
    bool nonzero = false;
    for (std::size_t r = 0; r < block.rows.size(); ++r) {
      f(static_cast<Eigen::Index>(r)) = rhs.coefficient(block.rows[r]);
      nonzero = nonzero || f(static_cast<Eigen::Index>(r)) != 0;
    }
    if (!nonzero) continue;
    const auto y = exact_solve(normal_matrix(block), f);
    if (!y) throw NumericFailure("solve_min_norm: singular normal equations at degree " + std::to_string(d));
    const Vector<Rational> coeffs = block.inv_gram.asDiagonal() * (block.a.transpose() * *y);
    for (std::size_t c = 0; c < block.cols.size(); ++c) u.add(block.cols[c], coeffs(static_cast<Eigen::Index>(c)));
  }
  return u;
}

// (Delta + a) u = f for a != 0 is triangular in total degree; solve top-down.
HermiteExpansion shifted_polynomial_inverse(const HermiteExpansion& rhs, const Rational& a, int degree) {
  const WeightSpec& w = rhs.weight;
  HermiteExpansion u{w, {}};
  for (int d = degree; d >= 0; --d) {
    for (const MultiIndex& m : indices_of_degree(w.dim, d)) {
      Rational s = rhs.coefficient(m);
      for (int j = 0; j < w.dim; ++j) {
        MultiIndex raised = m;
        raised[j] += 2;
        const Rational c = u.coefficient(raised);
        if (c != 0) s -= Rational(4 * (m[j] + 2) * (m[j] + 1)) * c;
      }
      u.add(m, s / a);
    }
  }
  return u;
}

Rational norm_bound(const WeightSpec& w) { return Rational(1) / (8 * w.dim * w.lambda * w.lambda); }

void finalize_exact(SolveReport& r) {
  r.solution_poly = hermite_to_monomial(r.solution);
  r.residual_exact = apply_operator(r.solution_poly, r.shift) == r.f;
  const GaussianScalar u_sq = norm_sq(r.solution);
  r.u_norm_sq_exact = u_sq;
  r.u_norm_sq = u_sq.to_double();
  r.exact_ratio = r.f.is_zero() ? Rational(0) : ratio(u_sq, r.f_norm_sq);
  r.ratio = to_double(*r.exact_ratio);
  r.bound_satisfied = *r.exact_ratio <= r.bound;
}

}  // namespace

SolveReport solve_scaled(const Polynomial& f, const Rational& a, const WeightSpec& w, int degree) {
  require_same_dim(f.dim(), w.dim, "solve");
  if (degree < 0) throw std::invalid_argument("solve: truncation degree must be >= 0");
  if (f.degree() > degree) {
    throw std::invalid_argument("solve: degree overflow (deg f = " + std::to_string(f.degree()) +
                                " > N = " + std::to_string(degree) + ")");
  }
  SolveReport r;
  r.weight = w;
  r.shift = a;
  r.truncation = degree;
  r.f = f;
  r.bound = norm_bound(w);
  const HermiteExpansion rhs = monomial_to_hermite(f, w);
  r.f_norm_sq = norm_sq(rhs);

  if (f.is_zero()) {
    r.solution = HermiteExpansion{w, {}};
  } else if (a == 0) {
    r.solution = min_norm_laplacian(rhs, degree);
  } else {
    r.solution = shifted_polynomial_inverse(rhs, a, degree);
  }
  r.particular_norm_sq = norm_sq(r.solution);
  finalize_exact(r);
  r.ratio_unenriched = r.ratio;
  return r;
}

SolveReport solve_min_norm(const Polynomial& f, const Rational& a, int degree) {
  return solve_scaled(f, a, WeightSpec::unit(f.dim()), degree);
}

// --- kernel functions ---------------------------------------------------

std::vector<double> KernelFunction::wave_vector() const {
  const double v_sq = std::accumulate(direction.begin(), direction.end(), 0.0,
                                      [](double acc, int v) { return acc + double(v) * v; });
  const double scale = std::sqrt(to_double(wave_number_sq) / v_sq);
  std::vector<double> k;
  k.reserve(direction.size());
  for (int v : direction) k.push_back(scale * v);
  return k;
}

bool KernelFunction::annihilated_by(const Rational& a) const {
  switch (kind) {
    case Kind::Cos:
    case Kind::Sin: return a > 0 && wave_number_sq == a;
    case Kind::Exp: return a < 0 && wave_number_sq == -a;
    case Kind::Harmonic: return a == 0 && harmonic.laplacian().is_zero();
  }
  return false;
}

double KernelFunction::evaluate(std::span<const double> x) const {
  if (kind == Kind::Harmonic) return harmonic.cast<double>().evaluate(x);
  const auto k = wave_vector();
  if (k.size() != x.size()) throw DimensionMismatch("KernelFunction::evaluate");
  double phase = 0.0;
  for (std::size_t j = 0; j < k.size(); ++j) phase += k[j] * x[j];
  switch (kind) {
    case Kind::Cos: return std::cos(phase);
    case Kind::Sin: return std::sin(phase);
    case Kind::Exp: return std::exp(phase);
    case Kind::Harmonic: break;
  }
  return 0.0;
}

std::string KernelFunction::describe() const {
  if (kind == Kind::Harmonic) return "harmonic " + harmonic.to_string();
  std::ostringstream os;
  os << (kind == Kind::Cos ? "cos" : kind == Kind::Sin ? "sin" : "exp") << "(k.x), v=(";
  for (std::size_t j = 0; j < direction.size(); ++j) os << (j ? "," : "") << direction[j];
  os << "), |k|^2=" << to_string(wave_number_sq);
  return os.str();
}

EnrichmentPolicy parse_enrichment(const std::string& name) {
  if (name == "auto") return EnrichmentPolicy::Auto;
  if (name == "none") return EnrichmentPolicy::None;
  if (name == "axes") return EnrichmentPolicy::Axes;
  throw std::invalid_argument("unknown enrichment policy \"" + name + "\"");
}

const char* to_string(EnrichmentPolicy p) {
  switch (p) {
    case EnrichmentPolicy::Auto: return "auto";
    case EnrichmentPolicy::None: return "none";
    case EnrichmentPolicy::Axes: return "axes";
  }
  return "?";
}

namespace {

// gcd-reduced, first nonzero entry positive.
std::vector<int> canonical_direction(std::vector<int> v) {
  int g = 0;
  for (int x : v) g = std::gcd(g, std::abs(x));
  if (g == 0) throw std::invalid_argument("kernel direction must be nonzero");
  const auto first = std::find_if(v.begin(), v.end(), [](int x) { return x != 0; });
  const int sign = *first < 0 ? -1 : 1;
  for (int& x : v) x = sign * x / g;
  return v;
}

}  // namespace

std::vector<std::vector<int>> default_directions(int dim, EnrichmentPolicy policy) {
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> out;
  auto push = [&](std::vector<int> v) {
    v = canonical_direction(std::move(v));
    if (seen.insert(v).second) out.push_back(std::move(v));
  };
  if (policy == EnrichmentPolicy::None) return out;
  for (int j = 0; j < dim; ++j) {
    std::vector<int> v(static_cast<std::size_t>(dim), 0);
    v[static_cast<std::size_t>(j)] = 1;
    push(v);
  }
  if (policy == EnrichmentPolicy::Auto) {
    const int patterns = 1 << (dim - 1);
    for (int mask = 0; mask < patterns; ++mask) {
      std::vector<int> v(static_cast<std::size_t>(dim), 1);
      for (int j = 1; j < dim; ++j) {
        if (mask & (1 << (j - 1))) v[static_cast<std::size_t>(j)] = -1;
      }
      push(v);
    }
  }
  return out;
}

std::vector<Polynomial> harmonic_basis(int dim, int max_degree) {
  std::vector<Polynomial> out;
  for (int d = 0; d <= max_degree; ++d) {
    const auto cols = indices_of_degree(dim, d);
    if (d < 2) {
      for (const auto& m : cols) out.push_back(Polynomial::monomial(m, 1));
      continue;
    }
    const auto rows = indices_of_degree(dim, d - 2);
    Matrix<Rational> lap = Matrix<Rational>::Constant(static_cast<Eigen::Index>(rows.size()),
                                                      static_cast<Eigen::Index>(cols.size()), Rational(0));
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const Polynomial image = Polynomial::monomial(cols[c], 1).laplacian();
      for (const auto& [m, coef] : image.terms()) {
        auto it = std::lower_bound(rows.begin(), rows.end(), m, GrlexLess{});
        lap(static_cast<Eigen::Index>(it - rows.begin()), static_cast<Eigen::Index>(c)) = coef;
      }
    }
    const Matrix<Rational> kernel = nullspace_basis(lap);
    for (Eigen::Index k = 0; k < kernel.cols(); ++k) {
      Polynomial p(dim);
      for (std::size_t c = 0; c < cols.size(); ++c) p.add_term(cols[c], kernel(static_cast<Eigen::Index>(c), k));
      out.push_back(std::move(p));
    }
  }
  return out;
}

std::vector<KernelFunction> kernel_basis(const Rational& a, int dim,
                                         const std::vector<std::vector<int>>& directions,
                                         int max_harmonic_degree) {
  std::vector<KernelFunction> out;
  if (a == 0) {
    for (auto& p : harmonic_basis(dim, max_harmonic_degree)) {
      KernelFunction g;
      g.kind = KernelFunction::Kind::Harmonic;
      g.harmonic = std::move(p);
      out.push_back(std::move(g));
    }
    return out;
  }
  if (directions.empty()) throw std::invalid_argument("kernel_basis: a != 0 needs at least one direction");
  std::set<std::vector<int>> seen;
  for (const auto& raw : directions) {
    require_same_dim(dim, static_cast<int>(raw.size()), "kernel_basis direction");
    auto v = canonical_direction(raw);
    if (!seen.insert(v).second) continue;
    if (a > 0) {
      for (auto kind : {KernelFunction::Kind::Cos, KernelFunction::Kind::Sin}) {
        out.push_back(KernelFunction{kind, v, a, Polynomial(dim)});
      }
    } else {
      std::vector<int> neg = v;
      for (int& x : neg) x = -x;
      out.push_back(KernelFunction{KernelFunction::Kind::Exp, v, -a, Polynomial(dim)});
      out.push_back(KernelFunction{KernelFunction::Kind::Exp, neg, -a, Polynomial(dim)});
    }
  }
  return out;
}

// --- enrichment ---------------------------------------------------------

namespace {

std::vector<double> combine(const std::vector<double>& k, const std::vector<double>& l, double sign) {
  std::vector<double> out(k.size());
  for (std::size_t j = 0; j < k.size(); ++j) out[j] = k[j] + sign * l[j];
  return out;
}

// <g_i, g_j>_w for two plane waves, reduced to single-wave moments.
double wave_gram(const KernelFunction& g, const KernelFunction& h, const WeightSpec& w) {
  using Kind = KernelFunction::Kind;
  const Polynomial one = Polynomial::constant(w.dim, 1);
  const auto k = g.wave_vector();
  const auto l = h.wave_vector();
  auto moment = [&](const std::vector<double>& q, WaveKind kind) {
    return weighted_wave_moment(one, q, kind, w);
  };
  const auto sum = combine(k, l, 1.0);
  const auto diff = combine(k, l, -1.0);
  if (g.kind == Kind::Exp && h.kind == Kind::Exp) return moment(sum, WaveKind::Exp);
  if (g.kind == Kind::Exp || h.kind == Kind::Exp) {
    throw std::invalid_argument("enrich: exponential and trigonometric waves cannot be mixed");
  }
  if (g.kind == Kind::Cos && h.kind == Kind::Cos) {
    return 0.5 * (moment(diff, WaveKind::Cos) + moment(sum, WaveKind::Cos));
  }
  if (g.kind == Kind::Sin && h.kind == Kind::Sin) {
    return 0.5 * (moment(diff, WaveKind::Cos) - moment(sum, WaveKind::Cos));
  }
  if (g.kind == Kind::Sin) return 0.5 * (moment(sum, WaveKind::Sin) + moment(diff, WaveKind::Sin));
  return 0.5 * (moment(sum, WaveKind::Sin) - moment(diff, WaveKind::Sin));
}

WaveKind wave_kind(KernelFunction::Kind k) {
  switch (k) {
    case KernelFunction::Kind::Cos: return WaveKind::Cos;
    case KernelFunction::Kind::Sin: return WaveKind::Sin;
    default: return WaveKind::Exp;
  }
}

SolveReport enrich_harmonic(const SolveReport& report, const std::vector<KernelFunction>& basis) {
  SolveReport r = report;
  const WeightSpec& w = report.weight;
  std::vector<HermiteExpansion> expansions;
  expansions.reserve(basis.size());
  for (const auto& g : basis) expansions.push_back(monomial_to_hermite(g.harmonic, w));

  const auto size = static_cast<Eigen::Index>(basis.size());
  Vector<Rational> b(size);
  bool orthogonal = true;
  for (Eigen::Index i = 0; i < size; ++i) {
    b(i) = inner_product(report.solution, expansions[static_cast<std::size_t>(i)]).value;
    orthogonal = orthogonal && b(i) == 0;
  }
  r.enrichment = "harmonic polynomials (" + std::to_string(basis.size()) + ")";
  if (orthogonal) {
    r.enrichment += ", solution already orthogonal";
    return r;
  }
  Matrix<Rational> gram(size, size);
  for (Eigen::Index i = 0; i < size; ++i) {
    for (Eigen::Index j = i; j < size; ++j) {
      gram(i, j) = inner_product(expansions[static_cast<std::size_t>(i)], expansions[static_cast<std::size_t>(j)]).value;
      gram(j, i) = gram(i, j);
    }
  }
  const auto c = exact_solve(gram, b);
  if (!c) throw NumericFailure("enrich: singular harmonic Gram matrix");
  for (Eigen::Index i = 0; i < size; ++i) {
    const auto& e = expansions[static_cast<std::size_t>(i)];
    for (const auto& [m, coef] : e.coeffs) r.solution.add(m, -(*c)(i) * coef);
  }
  finalize_exact(r);
  return r;
}

}  // namespace

SolveReport enrich(const SolveReport& report, const std::vector<KernelFunction>& basis) {
  if (basis.empty()) return report;
  const bool harmonic = basis.front().kind == KernelFunction::Kind::Harmonic;
  for (const auto& g : basis) {
    if ((g.kind == KernelFunction::Kind::Harmonic) != harmonic) {
      throw std::invalid_argument("enrich: cannot mix harmonic polynomials and plane waves");
    }
    if (!g.annihilated_by(report.shift)) {
      throw std::invalid_argument("enrich: " + g.describe() + " is not in ker(Delta + a)");
    }
  }
  if (report.f.is_zero()) return report;
  if (harmonic) {
    if (!report.kernel_terms.empty()) throw std::invalid_argument("enrich: report already has plane waves");
    return enrich_harmonic(report, basis);
  }

  const WeightSpec& w = report.weight;
  std::vector<KernelFunction> functions;
  for (const auto& t : report.kernel_terms) functions.push_back(t.function);
  for (const auto& g : basis) {
    const bool present = std::any_of(functions.begin(), functions.end(), [&](const KernelFunction& h) {
      return h.kind == g.kind && h.direction == g.direction && h.wave_number_sq == g.wave_number_sq;
    });
    if (!present) functions.push_back(g);
  }
  const auto size = static_cast<Eigen::Index>(functions.size());

  Eigen::MatrixXd gram(size, size);
  Eigen::VectorXd b(size);
  for (Eigen::Index i = 0; i < size; ++i) {
    const auto& g = functions[static_cast<std::size_t>(i)];
    b(i) = weighted_wave_moment(report.solution_poly, g.wave_vector(), wave_kind(g.kind), w);
    for (Eigen::Index j = i; j < size; ++j) {
      gram(i, j) = wave_gram(g, functions[static_cast<std::size_t>(j)], w);
      gram(j, i) = gram(i, j);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  const double condition = lo > 0 ? hi / lo : std::numeric_limits<double>::infinity();
  if (!(condition <= kMaxGramCondition)) {
    std::ostringstream os;
    os << "enrich: Gram matrix condition " << condition << " exceeds " << kMaxGramCondition;
    throw NumericFailure(os.str());
  }
  const Eigen::VectorXd projection = gram.ldlt().solve(b);

  SolveReport r = report;
  r.kernel_terms.clear();
  for (Eigen::Index i = 0; i < size; ++i) {
    r.kernel_terms.push_back({functions[static_cast<std::size_t>(i)], -projection(i)});
  }
  // ||u_poly + sum c g||^2 at the optimum c = -G^{-1} b.
  r.u_norm_sq = std::max(0.0, report.particular_norm_sq.to_double() - b.dot(projection));
  r.u_norm_sq_exact.reset();
  r.exact_ratio.reset();
  r.ratio = r.u_norm_sq / report.f_norm_sq.to_double();
  r.bound_satisfied = r.ratio <= to_double(r.bound);
  r.gram_condition = condition;
  r.residual_exact = apply_operator(r.solution_poly, r.shift) == r.f &&
                     std::all_of(functions.begin(), functions.end(),
                                 [&](const KernelFunction& g) { return g.annihilated_by(r.shift); });
  r.enrichment = "plane waves (" + std::to_string(functions.size()) + ")";
  return r;
}

double ratio_by_quadrature(const SolveReport& r, int order) {
  const auto poly = r.solution_poly.cast<double>();
  const auto fd = r.f.cast<double>();
  auto u_sq = [&](std::span<const double> x) {
    double v = poly.evaluate(x);
    for (const auto& t : r.kernel_terms) v += t.coefficient * t.function.evaluate(x);
    return v * v;
  };
  auto f_sq = [&](std::span<const double> x) {
    const double v = fd.evaluate(x);
    return v * v;
  };
  return integrate_gaussian(u_sq, r.weight, order) / integrate_gaussian(f_sq, r.weight, order);
}

SolveReport apply_Q(const Polynomial& f, const QConfig& config) {
  require_same_dim(f.dim(), config.dim, "apply_Q");
  const WeightSpec w = config.weight.value_or(WeightSpec::unit(config.dim));
  SolveReport r = solve_scaled(f, config.shift, w, config.degree);
  if (config.enrichment == EnrichmentPolicy::None || f.is_zero()) return r;
  const auto basis = kernel_basis(config.shift, config.dim, default_directions(config.dim, config.enrichment),
                                  config.degree + 2);
  return enrich(r, basis);
}

// --- operator norm ------------------------------------------------------

double operator_norm(int dim, const Rational& a, int degree, EnrichmentPolicy enrichment) {
  if (degree < 0) throw std::invalid_argument("operator_norm: truncation degree must be >= 0");
  if (a == 0) {
    // Q is block diagonal by degree (d -> d + 2); enrichment by harmonic
    // polynomials never changes it because the solution is already
    // orthogonal to ker(Delta).
    double largest = 0.0;
    for (int d = 0; d <= degree; ++d) {
      DegreeBlock block = make_block(dim, d, 1);
      const auto inv = exact_inverse(normal_matrix(block));
      if (!inv) throw NumericFailure("operator_norm: singular normal equations");
      const Matrix<Rational> q = block.inv_gram.asDiagonal() * (block.a.transpose() * *inv);
      Eigen::MatrixXd qn(q.rows(), q.cols());
      for (Eigen::Index c = 0; c < q.rows(); ++c) {
        const double out_norm = std::sqrt(to_double(basis_norm_sq(block.cols[static_cast<std::size_t>(c)], 1)));
        for (Eigen::Index r = 0; r < q.cols(); ++r) {
          const double in_norm = std::sqrt(to_double(basis_norm_sq(block.rows[static_cast<std::size_t>(r)], 1)));
          qn(c, r) = to_double(q(c, r)) * out_norm / in_norm;
        }
      }
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(qn);
      largest = std::max(largest, svd.singularValues()(0));
    }
    return largest;
  }

  if (enrichment != EnrichmentPolicy::None) {
    throw std::invalid_argument("operator_norm: enriched Q for a != 0 has no finite matrix form");
  }
  const WeightSpec w = WeightSpec::unit(dim);
  const auto basis = indices_up_to(dim, degree);
  const auto size = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd qn(size, size);
  for (Eigen::Index col = 0; col < size; ++col) {
    HermiteExpansion unit_rhs{w, {}};
    unit_rhs.add(basis[static_cast<std::size_t>(col)], 1);
    const HermiteExpansion u = shifted_polynomial_inverse(unit_rhs, a, degree);
    const double in_norm = std::sqrt(to_double(basis_norm_sq(basis[static_cast<std::size_t>(col)], 1)));
    for (Eigen::Index row = 0; row < size; ++row) {
      const MultiIndex& m = basis[static_cast<std::size_t>(row)];
      qn(row, col) = to_double(u.coefficient(m)) * std::sqrt(to_double(basis_norm_sq(m, 1))) / in_norm;
    }
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(qn);
  return svd.singularValues()(0);
}

}  // namespace gauss_rinv
