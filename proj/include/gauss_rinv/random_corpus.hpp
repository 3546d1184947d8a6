#pragma once

#include "gauss_rinv/polynomial.hpp"

#include <cstdint>
#include <random>

namespace gauss_rinv {

/// Seeded generator for reproducible test corpora.
///
/// Bounded draws use rejection on raw mt19937_64 output (whose sequence is
/// fixed by the standard) instead of std::uniform_int_distribution, so a
/// corpus is identical across standard library implementations.
class CorpusRng {
 public:
  explicit CorpusRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);

  /// p/q with |p| <= 16, 1 <= q <= 16.
  Rational rational(int bound = 16);

  /// Nonzero rational with the same bounds.
  Rational nonzero_rational(int bound = 16);

  /// Random polynomial with up to `max_terms` terms of total degree <= max_degree.
  /// The result may be zero when every drawn coefficient cancels.
  Polynomial polynomial(int dim, int max_degree, int max_terms = 6);

 private:
  std::mt19937_64 engine_;
};

}  // namespace gauss_rinv
