#pragma once

#include "gauss_rinv/domain_solvers.hpp"
#include "gauss_rinv/right_inverse.hpp"
#include "gauss_rinv/weighted_adjoint.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace gauss_rinv {

using Json = nlohmann::ordered_json;

/// Input that does not match the expected document shape. `where` is a JSON
/// pointer into the offending document.
class SchemaError : public std::invalid_argument {
 public:
  SchemaError(std::string where, const std::string& message)
      : std::invalid_argument((where.empty() ? std::string("/") : where) + ": " + message), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

/// Serializes with two-space indentation, keys in insertion order and every
/// floating-point value as "%.17g"; non-finite floats become null.
std::string dump_json(const Json& j);

Json load_json_file(const std::string& path);

Json to_json(const Polynomial& p);
Json to_json(const GaussianScalar& s);
Json to_json(const WeightSpec& w);
Json to_json(const HermiteExpansion& e);
Json to_json(const SolveReport& r);
Json to_json(const IdentityReport& r);
Json to_json(const BoundedReport& r);
Json to_json(const EmbeddingReport& r);
Json to_json(const CounterexampleReport& r);

// Readers; `where` prefixes error locations.
Rational rational_from_json(const Json& j, const std::string& where);
int int_from_json(const Json& j, const std::string& where, int lo, int hi);
Polynomial polynomial_from_json(const Json& j, const std::string& where);
WeightSpec weight_from_json(const Json& j, int dim, const std::string& where);

}  // namespace gauss_rinv
