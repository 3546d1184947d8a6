#pragma once

#include "gauss_rinv/json_io.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gauss_rinv {

inline constexpr const char* kVersion = "gauss-rinv 0.1.0";

/// One problem description, read from a spec file and/or command-line flags.
struct ProblemSpec {
  int dim = 1;
  Rational a = 0;
  std::optional<Rational> lambda;
  std::optional<std::vector<Rational>> center;
  std::optional<Polynomial> f;          // polynomial right-hand side
  std::optional<std::string> f_source;  // const:v | poly:<path> | expr-grid:<path>
  std::optional<std::string> box;       // "lo1,hi1;lo2,hi2"
  std::optional<int> degree;
  EnrichmentPolicy enrichment = EnrichmentPolicy::Auto;
  int quad_order = 40;
  double quad_tol = 1e-10;
  std::uint64_t seed = 42;
  double R = 1000;
  Rational c1 = 0, c2 = 0;
  int cases = 200;
  int weight_cases = 50;
  std::string identity;  // empty: all

  WeightSpec weight() const;
  /// f, or the constant 1 when no right-hand side was given.
  Polynomial rhs() const;
  /// degree, or deg f (at least 0).
  int truncation() const;
};

/// The JSON Schema that spec files are checked against.
const Json& problem_spec_schema();

/// Validates and reads a spec document; errors carry a JSON pointer.
ProblemSpec parse_problem_spec(const Json& j);
Json to_json(const ProblemSpec& s);

/// Right-hand side for the bounded-domain pipeline.
SampledFunction make_sampled_function(const BoxDomain& box, const std::string& source);

}  // namespace gauss_rinv
