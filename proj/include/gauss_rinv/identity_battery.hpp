#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace gauss_rinv {

/// Worker count: GAUSS_RINV_THREADS if set (>= 1), else hardware concurrency.
int worker_threads();

/// Runs task(i) for i in [0, count) on up to `threads` workers. Each index is
/// processed exactly once; callers store results by index.
void parallel_for(int count, int threads, const std::function<void(int)>& task);

struct IdentityTally {
  std::string identity;
  int cases = 0;
  int passed = 0;
  std::vector<std::string> failures;  // first few, in case order
};

/// The names accepted by run_identity_battery, in report order.
const std::vector<std::string>& battery_identities();

/// Seeded random cases for every identity (or only `only`, when nonempty).
/// The general-weight commutator uses `weight_cases` random weights.
/// Inputs are drawn sequentially before fan-out, so results do not depend
/// on the thread count.
std::vector<IdentityTally> run_identity_battery(std::uint64_t seed, int cases, int weight_cases, int threads,
                                                const std::string& only = "");

}  // namespace gauss_rinv
