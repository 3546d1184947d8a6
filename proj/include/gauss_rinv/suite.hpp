#pragma once

#include "gauss_rinv/json_io.hpp"

#include <cstdint>

namespace gauss_rinv {

struct SuiteOptions {
  std::uint64_t seed = 42;
  int quad_order = 40;
  int threads = 1;
  int identity_cases = 200;
  int weight_cases = 50;
  int dominance_cases = 100;
};

struct SuiteResult {
  Json cases = Json::array();  // one entry per check, fixed order
  bool pass = false;
};

/// Every headline check in one run. The output depends only on the options,
/// never on timing or thread count.
SuiteResult run_suite(const SuiteOptions& options);

}  // namespace gauss_rinv
