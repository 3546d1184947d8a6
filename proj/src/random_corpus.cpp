#include "gauss_rinv/random_corpus.hpp"

#include <limits>
#include <stdexcept>

namespace gauss_rinv {

std::int64_t CorpusRng::uniform(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw std::invalid_argument("CorpusRng::uniform: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(engine_());
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t draw = engine_();
  while (draw >= limit) draw = engine_();
  return lo + static_cast<std::int64_t>(draw % span);
}

Rational CorpusRng::rational(int bound) {
  const auto num = uniform(-bound, bound);
  const auto den = uniform(1, bound);
  return Rational(Integer(num), Integer(den));
}

Rational CorpusRng::nonzero_rational(int bound) {
  Rational r = 0;
  while (r == 0) r = rational(bound);
  return r;
}

Polynomial CorpusRng::polynomial(int dim, int max_degree, int max_terms) {
  Polynomial p(dim);
  const auto terms = uniform(1, max_terms);
  for (std::int64_t t = 0; t < terms; ++t) {
    const auto degree = static_cast<int>(uniform(0, max_degree));
    MultiIndex m(dim);
    int remaining = degree;
    for (int j = 0; j < dim - 1; ++j) {
      const auto e = static_cast<int>(uniform(0, remaining));
      m[j] = e;
      remaining -= e;
    }
    m[dim - 1] = remaining;
    p.add_term(m, nonzero_rational());
  }
  return p;
}

}  // namespace gauss_rinv
