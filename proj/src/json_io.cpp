#include "gauss_rinv/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace gauss_rinv {

namespace {

void dump_value(const Json& j, std::string& out, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(key).dump() + ": ";
        dump_value(value, out, depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        dump_value(j[i], out, depth + 1);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

Json optional_double(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }
Json optional_bool(const std::optional<bool>& v) { return v ? Json(*v) : Json(nullptr); }

Json index_json(const MultiIndex& m) { return Json(m.exponents()); }

const char* kind_name(KernelFunction::Kind k) {
  switch (k) {
    case KernelFunction::Kind::Cos: return "cos";
    case KernelFunction::Kind::Sin: return "sin";
    case KernelFunction::Kind::Exp: return "exp";
    case KernelFunction::Kind::Harmonic: return "harmonic";
  }
  return "?";
}

}  // namespace

std::string dump_json(const Json& j) {
  std::string out;
  dump_value(j, out, 0);
  out += "\n";
  return out;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("", "cannot open \"" + path + "\"");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError("", "\"" + path + "\" is not valid JSON (" + e.what() + ")");
  }
}

// --- writers ------------------------------------------------------------

Json to_json(const Polynomial& p) {
  Json terms = Json::array();
  for (const auto& [m, c] : p.terms()) terms.push_back({{"exp", m.exponents()}, {"coef", to_string(c)}});
  return {{"dim", p.dim()}, {"terms", terms}};
}

Json to_json(const GaussianScalar& s) {
  return {{"rational", to_string(s.value)},
          {"pi_pow", to_string(s.pi_power())},
          {"lambda", to_string(s.lambda)},
          {"float", s.to_double()}};
}

Json to_json(const WeightSpec& w) {
  Json center = Json::array();
  for (const auto& c : w.center) center.push_back(to_string(c));
  return {{"dim", w.dim}, {"lambda", to_string(w.lambda)}, {"center", center}};
}

Json to_json(const HermiteExpansion& e) {
  Json coeffs = Json::array();
  for (const auto& [m, c] : e.coeffs) coeffs.push_back({{"index", index_json(m)}, {"coef", to_string(c)}});
  return coeffs;
}

Json to_json(const SolveReport& r) {
  Json kernel = Json::array();
  for (const auto& t : r.kernel_terms) {
    kernel.push_back({{"kind", kind_name(t.function.kind)},
                      {"direction", t.function.direction},
                      {"wave_number_sq", to_string(t.function.wave_number_sq)},
                      {"coefficient", t.coefficient}});
  }
  Json j;
  j["dim"] = r.weight.dim;
  j["a"] = to_string(r.shift);
  j["weight"] = to_json(r.weight);
  j["truncation"] = r.truncation;
  j["f"] = to_json(r.f);
  j["solution"] = {{"hermite", to_json(r.solution)}, {"polynomial", to_json(r.solution_poly)}, {"kernel_terms", kernel}};
  j["residual_exact"] = r.residual_exact;
  j["f_norm_sq"] = to_json(r.f_norm_sq);
  j["particular_norm_sq"] = to_json(r.particular_norm_sq);
  j["u_norm_sq"] = r.u_norm_sq_exact ? to_json(*r.u_norm_sq_exact) : Json(r.u_norm_sq);
  j["ratio"] = r.exact_ratio ? Json(to_string(*r.exact_ratio)) : Json(r.ratio);
  j["ratio_float"] = r.ratio;
  j["ratio_unenriched"] = r.ratio_unenriched;
  j["bound"] = to_string(r.bound);
  j["bound_satisfied"] = r.bound_satisfied;
  j["enrichment"] = r.enrichment;
  j["gram_condition"] = optional_double(r.gram_condition);
  return j;
}

Json to_json(const IdentityReport& r) {
  return {{"identity", r.identity},
          {"relation", r.relation},
          {"lhs", to_json(r.lhs)},
          {"rhs", to_json(r.rhs)},
          {"pass", r.pass}};
}

Json to_json(const BoundedReport& r) {
  Json j;
  j["box"] = r.domain.to_string();
  j["center"] = r.center;
  j["diameter"] = r.domain.diameter();
  j["degree"] = r.degree;
  j["quad_tol"] = r.quad_tol;
  j["solve"] = to_json(r.solve);
  j["f_weighted_norm_sq"] = r.f_weighted_norm_sq;
  j["weighted_ratio"] = r.weighted_ratio;
  j["weighted_bound"] = r.weighted_bound;
  j["weighted_satisfied"] = r.weighted_satisfied;
  j["u_norm_U"] = r.u_norm_U;
  j["f_norm_U"] = r.f_norm_U;
  j["constant"] = r.constant;
  j["bound_value"] = r.bound_value;
  j["margin"] = r.margin;
  j["bound_satisfied"] = r.bound_satisfied;
  j["weak_residual"] = r.weak_residual;
  j["weak_residual_tolerance"] = kWeakResidualTolerance;
  j["residual_ok"] = r.residual_ok;
  return j;
}

Json to_json(const EmbeddingReport& r) {
  return {{"dim", r.dim},
          {"weighted_norm_sq", r.weighted_norm_sq},
          {"l2_norm_sq", optional_double(r.l2_norm_sq)},
          {"sup_sq", optional_double(r.sup_sq)},
          {"l2_holds", optional_bool(r.l2_holds)},
          {"sup_holds", optional_bool(r.sup_holds)},
          {"pass", r.pass}};
}

Json to_json(const CounterexampleReport& r) {
  Json growth = Json::array();
  for (const auto& g : r.growth) growth.push_back({{"R", g.R}, {"integral", g.integral}});
  Json j;
  j["R"] = r.R;
  j["c1"] = to_string(r.c1);
  j["c2"] = to_string(r.c2);
  j["u"] = r.u.to_string();
  j["u_second"] = r.u_second.to_string();
  j["second_derivative_exact"] = r.second_derivative_exact;
  j["max_second_derivative_error"] = r.max_second_derivative_error;
  j["u_at_one_closed"] = to_string(r.u_at_one_closed);
  j["u_at_one_integral"] = to_string(r.u_at_one_integral);
  j["max_formula_error"] = r.max_formula_error;
  j["growth"] = growth;
  j["growth_increasing"] = r.growth_increasing;
  j["weighted_integral"] = r.weighted_integral;
  j["weighted_tail_bound"] = r.weighted_tail_bound;
  j["weighted_cutoff"] = r.weighted_cutoff;
  j["weighted_finite"] = r.weighted_finite;
  return j;
}

// --- readers ------------------------------------------------------------

Rational rational_from_json(const Json& j, const std::string& where) {
  if (!j.is_string()) throw SchemaError(where, "expected a rational string \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const RationalParseError& e) {
    throw SchemaError(where, e.what());
  }
}

int int_from_json(const Json& j, const std::string& where, int lo, int hi) {
  if (!j.is_number_integer()) throw SchemaError(where, "expected an integer");
  const auto v = j.get<long long>();
  if (v < lo || v > hi) {
    throw SchemaError(where, "expected an integer in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return static_cast<int>(v);
}

Polynomial polynomial_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) throw SchemaError(where, "expected a polynomial object");
  for (const auto& [key, value] : j.items()) {
    if (key != "dim" && key != "terms") throw SchemaError(where + "/" + key, "unknown key");
  }
  if (!j.contains("dim")) throw SchemaError(where, "missing \"dim\"");
  if (!j.contains("terms")) throw SchemaError(where, "missing \"terms\"");
  const int dim = int_from_json(j["dim"], where + "/dim", 1, 16);
  const Json& terms = j["terms"];
  if (!terms.is_array()) throw SchemaError(where + "/terms", "expected an array");
  Polynomial p(dim);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string at = where + "/terms/" + std::to_string(i);
    const Json& t = terms[i];
    if (!t.is_object() || !t.contains("exp") || !t.contains("coef") || t.size() != 2) {
      throw SchemaError(at, "expected {\"exp\": [...], \"coef\": \"p/q\"}");
    }
    const Json& e = t["exp"];
    if (!e.is_array() || static_cast<int>(e.size()) != dim) {
      throw SchemaError(at + "/exp", "expected " + std::to_string(dim) + " exponents");
    }
    std::vector<int> exps;
    for (std::size_t k = 0; k < e.size(); ++k) exps.push_back(int_from_json(e[k], at + "/exp/" + std::to_string(k), 0, 64));
    p.add_term(MultiIndex(exps), rational_from_json(t["coef"], at + "/coef"));
  }
  return p;
}

WeightSpec weight_from_json(const Json& j, int dim, const std::string& where) {
  if (!j.is_object()) throw SchemaError(where, "expected a weight object");
  for (const auto& [key, value] : j.items()) {
    if (key != "lambda" && key != "center" && key != "dim") throw SchemaError(where + "/" + key, "unknown key");
  }
  if (j.contains("dim") && int_from_json(j["dim"], where + "/dim", 1, 16) != dim) {
    throw SchemaError(where + "/dim", "does not match the problem dimension");
  }
  Rational lambda = 1;
  if (j.contains("lambda")) {
    lambda = rational_from_json(j["lambda"], where + "/lambda");
    if (lambda <= 0) throw SchemaError(where + "/lambda", "must be positive");
  }
  std::vector<Rational> center(static_cast<std::size_t>(dim), Rational(0));
  if (j.contains("center")) {
    const Json& c = j["center"];
    if (!c.is_array() || static_cast<int>(c.size()) != dim) {
      throw SchemaError(where + "/center", "expected " + std::to_string(dim) + " rational strings");
    }
    for (std::size_t k = 0; k < c.size(); ++k) center[k] = rational_from_json(c[k], where + "/center/" + std::to_string(k));
  }
  return WeightSpec(dim, lambda, center);
}

}  // namespace gauss_rinv
