#include "gauss_rinv/identity_battery.hpp"

#include "gauss_rinv/random_corpus.hpp"
#include "gauss_rinv/weighted_adjoint.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace gauss_rinv {

int worker_threads() {
  if (const char* env = std::getenv("GAUSS_RINV_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<int>(std::min(v, 256L));
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

void parallel_for(int count, int threads, const std::function<void(int)>& task) {
  threads = std::clamp(threads, 1, std::max(count, 1));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

const std::vector<std::string>& battery_identities() {
  static const std::vector<std::string> names{
      "commutator-agreement", "commutator-integral", "adjoint-norm-identity", "coercivity",
      "duality",              "adjointness",         "general-weight-commutator"};
  return names;
}

namespace {

struct CaseInput {
  int dim = 1;
  Polynomial psi{1};
  Polynomial other{1};  // f for duality, u for adjointness, the weight for the general commutator
  Rational a = 0;
  WeightSpec weight;
};

CaseInput draw_case(CorpusRng& rng) {
  CaseInput c;
  c.dim = static_cast<int>(rng.uniform(1, 3));
  const int psi_degree = c.dim == 3 ? 4 : 6;
  c.psi = rng.polynomial(c.dim, psi_degree);
  c.a = rng.rational(4);
  c.other = rng.polynomial(c.dim, 4);
  std::vector<Rational> center;
  for (int j = 0; j < c.dim; ++j) center.push_back(rng.rational(3));
  c.weight = WeightSpec(c.dim, Rational(rng.uniform(1, 6), rng.uniform(1, 6)), center);
  return c;
}

bool check_case(const std::string& identity, const CaseInput& c) {
  if (identity == "commutator-agreement") {
    const Polynomial phi = Polynomial::squared_norm(c.dim);
    const Polynomial direct = commutator(c.psi, phi, CommutatorMethod::Direct);
    return direct == commutator(c.psi, phi, CommutatorMethod::GeneralWeight) &&
           direct == commutator(c.psi, phi, CommutatorMethod::Reduced);
  }
  if (identity == "commutator-integral") return verify_commutator_integral(c.psi).pass;
  if (identity == "adjoint-norm-identity") return verify_adjoint_norm_identity(c.psi, c.a, c.weight).pass;
  if (identity == "coercivity") return verify_coercivity(c.psi, c.a).pass;
  if (identity == "duality") return verify_duality(c.other, c.psi, c.a).pass;
  if (identity == "adjointness") return verify_adjointness(c.psi, c.other, c.weight).pass;
  if (identity == "general-weight-commutator") {
    return commutator(c.psi, c.other, CommutatorMethod::Direct) ==
           commutator(c.psi, c.other, CommutatorMethod::GeneralWeight);
  }
  throw std::invalid_argument("unknown identity \"" + identity + "\"");
}

}  // namespace

std::vector<IdentityTally> run_identity_battery(std::uint64_t seed, int cases, int weight_cases, int threads,
                                                const std::string& only) {
  const auto& names = battery_identities();
  if (!only.empty() && std::find(names.begin(), names.end(), only) == names.end()) {
    throw std::invalid_argument("unknown identity \"" + only + "\"");
  }
  if (cases < 0 || weight_cases < 0) throw std::invalid_argument("case counts must be >= 0");

  std::vector<IdentityTally> out;
  for (std::size_t k = 0; k < names.size(); ++k) {
    const std::string& name = names[k];
    if (!only.empty() && name != only) continue;
    const int count = name == "general-weight-commutator" ? weight_cases : cases;
    CorpusRng rng(seed * 1000003ULL + k);
    std::vector<CaseInput> inputs;
    inputs.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) inputs.push_back(draw_case(rng));

    std::vector<char> verdict(static_cast<std::size_t>(count), 0);
    parallel_for(count, threads, [&](int i) {
      verdict[static_cast<std::size_t>(i)] = check_case(name, inputs[static_cast<std::size_t>(i)]) ? 1 : 0;
    });

    IdentityTally tally{name, count, 0, {}};
    for (int i = 0; i < count; ++i) {
      if (verdict[static_cast<std::size_t>(i)]) {
        ++tally.passed;
      } else if (tally.failures.size() < 5) {
        tally.failures.push_back("case " + std::to_string(i) + ": psi = " + inputs[static_cast<std::size_t>(i)].psi.to_string());
      }
    }
    out.push_back(std::move(tally));
  }
  return out;
}

}  // namespace gauss_rinv
