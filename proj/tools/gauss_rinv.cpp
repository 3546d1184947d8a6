// gauss-rinv: solve (Delta + a) u = f in Gaussian-weighted L^2 and check the
// norm estimates. Exit codes: 0 pass, 1 check failed, 2 bad input, 3 numeric failure.

#include "gauss_rinv/identity_battery.hpp"
#include "gauss_rinv/problem_spec.hpp"
#include "gauss_rinv/quadrature.hpp"
#include "gauss_rinv/suite.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace gauss_rinv;

namespace {

enum Exit { kPass = 0, kFail = 1, kBadInput = 2, kNumeric = 3 };

struct Flags {
  std::optional<int> dim;
  std::optional<std::string> a, lambda, center, enrich, f, box, c1, c2, identity;
  std::optional<int> degree, cases, weight_cases;
  std::optional<double> quad_tol, R;
};

Rational flag_rational(const std::string& value, const std::string& flag) {
  try {
    return parse_rational(value);
  } catch (const RationalParseError& e) {
    throw SchemaError(flag, e.what());
  }
}

std::vector<Rational> flag_rationals(const std::string& value, const std::string& flag) {
  std::vector<Rational> out;
  std::stringstream in(value);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(flag_rational(item, flag));
  if (out.empty()) throw SchemaError(flag, "expected comma-separated rationals");
  return out;
}

Polynomial load_polynomial(const std::string& arg, const std::string& flag) {
  Json j;
  if (!arg.empty() && arg.front() == '{') {
    try {
      j = Json::parse(arg);
    } catch (const Json::parse_error& e) {
      throw SchemaError(flag, e.what());
    }
  } else {
    j = load_json_file(arg);
  }
  return polynomial_from_json(j, flag);
}

// Spec file first, then flags on top.
ProblemSpec build_spec(const std::optional<std::string>& spec_path, const Flags& fl, std::uint64_t seed,
                       bool seed_set, int quad_order, bool quad_set, bool bounded) {
  ProblemSpec s;
  if (spec_path) s = parse_problem_spec(load_json_file(*spec_path));
  if (fl.dim) {
    if (*fl.dim < 1 || *fl.dim > 16) throw SchemaError("--dim", "expected an integer in [1, 16]");
    s.dim = *fl.dim;
  }
  if (fl.a) s.a = flag_rational(*fl.a, "--a");
  if (fl.lambda) {
    s.lambda = flag_rational(*fl.lambda, "--lambda");
    if (*s.lambda <= 0) throw SchemaError("--lambda", "must be positive");
  }
  if (fl.center) {
    s.center = flag_rationals(*fl.center, "--center");
    if (static_cast<int>(s.center->size()) != s.dim) throw SchemaError("--center", "needs one entry per dimension");
  }
  if (fl.degree) {
    if (*fl.degree < 0) throw SchemaError("--degree", "must be >= 0");
    s.degree = *fl.degree;
  }
  if (fl.enrich) {
    try {
      s.enrichment = parse_enrichment(*fl.enrich);
    } catch (const std::invalid_argument& e) {
      throw SchemaError("--enrich", e.what());
    }
  }
  if (fl.f) {
    if (bounded) {
      s.f_source = *fl.f;
    } else {
      s.f = load_polynomial(*fl.f, "--f");
      s.f_source.reset();
    }
  }
  if (s.f && s.f->dim() != s.dim) {
    if (!fl.dim && !spec_path) {
      s.dim = s.f->dim();
    } else {
      throw SchemaError("--f", "polynomial dimension does not match --dim");
    }
  }
  if (fl.box) s.box = *fl.box;
  if (fl.quad_tol) {
    if (!(*fl.quad_tol > 0)) throw SchemaError("--quad-tol", "must be positive");
    s.quad_tol = *fl.quad_tol;
  }
  if (fl.R) s.R = *fl.R;
  if (fl.c1) s.c1 = flag_rational(*fl.c1, "--c1");
  if (fl.c2) s.c2 = flag_rational(*fl.c2, "--c2");
  if (fl.cases) s.cases = *fl.cases;
  if (fl.weight_cases) s.weight_cases = *fl.weight_cases;
  if (fl.identity) s.identity = *fl.identity;
  if (seed_set) s.seed = seed;
  if (quad_set) s.quad_order = quad_order;
  if (s.center && static_cast<int>(s.center->size()) != s.dim) {
    throw SchemaError("/weight/center", "needs one entry per dimension");
  }
  return s;
}

Json run_solve(const ProblemSpec& s, bool scaled, bool& pass) {
  if (s.f_source) throw SchemaError("/f", "solve needs a polynomial right-hand side");
  if (scaled && !s.lambda) throw SchemaError("--lambda", "scaled-solve needs a weight scale");
  const Polynomial f = s.rhs();
  const auto r = apply_Q(f, QConfig{s.dim, s.a, s.truncation(), s.enrichment, s.weight()});
  Json j = to_json(r);
  if (!r.kernel_terms.empty()) j["ratio_quadrature"] = ratio_by_quadrature(r, s.quad_order);
  pass = r.residual_exact && (s.a != 0 || r.bound_satisfied);
  return j;
}

Json run_verify(const ProblemSpec& s, bool& pass) {
  const auto tallies = run_identity_battery(s.seed, s.cases, s.weight_cases, worker_threads(), s.identity);
  Json list = Json::array();
  pass = true;
  for (const auto& t : tallies) {
    pass = pass && t.passed == t.cases;
    list.push_back({{"identity", t.identity}, {"cases", t.cases}, {"passed", t.passed}, {"failures", t.failures}});
  }
  return {{"identities", list}};
}

Json run_opnorm(const ProblemSpec& s, bool& pass) {
  const int degree = s.degree.value_or(20);
  const double value = operator_norm(s.dim, s.a, degree, s.enrichment);
  Json j = {{"dim", s.dim}, {"a", to_string(s.a)}, {"degree", degree}, {"value", value}};
  pass = true;
  if (s.a == 0) {
    const double bound = 1.0 / std::sqrt(8.0 * s.dim);
    j["bound"] = bound;
    j["within_bound"] = value <= bound + 1e-10;
    pass = value <= bound + 1e-10;
  }
  return j;
}

Json run_bounded(const ProblemSpec& s, bool& pass) {
  const BoxDomain box = BoxDomain::parse(s.box.value_or("-1,1"));
  const SampledFunction f = make_sampled_function(box, s.f_source.value_or("const:1"));
  const auto r = solve_bounded(f, s.a, s.degree.value_or(30), s.quad_tol, s.enrichment);
  pass = r.bound_satisfied && r.residual_ok;
  Json j = to_json(r);
  j["f"] = f.description();
  return j;
}

Json run_counterexample(const ProblemSpec& s, bool& pass) {
  const auto r = growth_counterexample(s.R, s.c1, s.c2);
  pass = r.u_at_one_closed == r.u_at_one_integral && r.second_derivative_exact && r.growth_increasing &&
         r.weighted_finite && r.max_formula_error <= 1e-12;
  return to_json(r);
}

void emit(const Json& report, const std::string& out_path) {
  const std::string text = dump_json(report);
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw SchemaError("--out", "cannot write \"" + out_path + "\"");
  out << text;
}

void report_error(const std::string& kind, const std::string& message) {
  std::cerr << dump_json(Json{{"error", kind}, {"message", message}});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted-L2 right inverse of Delta + a: solves, identity checks and reports"};
  app.set_version_flag("--version", kVersion);
  app.fallthrough();

  std::string out_path;
  std::uint64_t seed = 42;
  int quad_order = kDefaultQuadOrder;
  bool print_schema = false;
  bool timing = false;
  std::optional<std::string> spec_path;
  app.add_option("--out", out_path, "Write the report here instead of stdout");
  auto* seed_opt = app.add_option("--seed", seed, "Seed for random corpora");
  auto* quad_opt = app.add_option("--quad-order", quad_order, "Gauss-Hermite order for quadrature cross-checks")
                       ->check(CLI::Range(1, 200));
  app.add_flag("--json-schema", print_schema, "Print the problem spec schema and exit");
  app.add_option("--spec", spec_path, "Problem spec JSON file");
  app.add_flag("--timing", timing, "Add wall time to the report (breaks byte-identical output)");

  Flags fl;
  auto problem_flags = [&fl](CLI::App* sub, bool bounded) {
    sub->add_option("--dim", fl.dim, "Dimension n");
    sub->add_option("--a", fl.a, "Shift a (rational string)");
    sub->add_option("--degree", fl.degree, "Truncation degree N");
    sub->add_option("--enrich", fl.enrich, "Kernel enrichment: auto, none or axes");
    if (bounded) {
      sub->add_option("--f", fl.f, "const:<v>, poly:<path> or expr-grid:<path>");
    } else {
      sub->add_option("--f", fl.f, "Polynomial JSON file (or inline JSON object)");
      sub->add_option("--lambda", fl.lambda, "Weight scale lambda");
      sub->add_option("--center", fl.center, "Weight centre x0, comma-separated");
    }
  };

  auto* solve = app.add_subcommand("solve", "Minimal-norm solve of (Delta + a) u = f");
  problem_flags(solve, false);
  auto* scaled = app.add_subcommand("scaled-solve", "Solve with weight e^{-lambda |x - x0|^2}");
  problem_flags(scaled, false);
  auto* verify = app.add_subcommand("verify", "Seeded identity battery");
  verify->add_option("--cases", fl.cases, "Random cases per identity");
  verify->add_option("--weight-cases", fl.weight_cases, "Random weights for the general commutator");
  verify->add_option("--identity", fl.identity, "Run only this identity");
  auto* opnorm = app.add_subcommand("opnorm", "Largest singular value of the truncated right inverse");
  opnorm->add_option("--dim", fl.dim, "Dimension n");
  opnorm->add_option("--a", fl.a, "Shift a (rational string)");
  opnorm->add_option("--degree", fl.degree, "Truncation degree N");
  opnorm->add_option("--enrich", fl.enrich, "none (a != 0 supports only none)");
  auto* bounded = app.add_subcommand("bounded", "Bounded box domain via zero extension");
  problem_flags(bounded, true);
  bounded->add_option("--box", fl.box, "\"lo1,hi1;lo2,hi2;...\"");
  bounded->add_option("--quad-tol", fl.quad_tol, "Relative tolerance of the box quadrature");
  auto* counter = app.add_subcommand("counterexample", "f in L^2(R) whose solutions leave L^2(R)");
  counter->add_option("--R", fl.R, "Largest growth radius");
  counter->add_option("--c1", fl.c1, "Linear constant");
  counter->add_option("--c2", fl.c2, "Additive constant");
  auto* suite = app.add_subcommand("suite", "Full battery with a fixed seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kBadInput;
  }

  if (print_schema) {
    std::cout << dump_json(problem_spec_schema());
    return kPass;
  }
  CLI::App* chosen = nullptr;
  for (auto* sub : {solve, scaled, verify, opnorm, bounded, counter, suite}) {
    if (sub->parsed()) chosen = sub;
  }
  if (!chosen) {
    std::cerr << app.help();
    return kBadInput;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    if (opnorm->parsed() && !fl.enrich) fl.enrich = "none";
    const ProblemSpec spec =
        build_spec(spec_path, fl, seed, seed_opt->count() > 0, quad_order, quad_opt->count() > 0, bounded->parsed());
    bool pass = false;
    Json result;
    const std::string command = chosen->get_name();
    if (chosen == solve || chosen == scaled) {
      result = run_solve(spec, chosen == scaled, pass);
    } else if (chosen == verify) {
      result = run_verify(spec, pass);
    } else if (chosen == opnorm) {
      result = run_opnorm(spec, pass);
    } else if (chosen == bounded) {
      result = run_bounded(spec, pass);
    } else if (chosen == counter) {
      result = run_counterexample(spec, pass);
    } else {
      SuiteOptions options;
      options.seed = spec.seed;
      options.quad_order = spec.quad_order;
      options.threads = worker_threads();
      options.identity_cases = spec.cases;
      options.weight_cases = spec.weight_cases;
      const auto suite_result = run_suite(options);
      result = suite_result.cases;
      pass = suite_result.pass;
    }

    Json report;
    report["version"] = kVersion;
    report["command"] = command;
    report["spec"] = to_json(spec);
    report["result"] = result;
    report["pass"] = pass;
    if (timing) {
      report["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    emit(report, out_path);
    return pass ? kPass : kFail;
  } catch (const SchemaError& e) {
    report_error("schema", e.what());
    return kBadInput;
  } catch (const NumericFailure& e) {
    report_error("numeric", e.what());
    return kNumeric;
  } catch (const std::invalid_argument& e) {
    report_error("input", e.what());
    return kBadInput;
  } catch (const std::exception& e) {
    report_error("numeric", e.what());
    return kNumeric;
  }
}
