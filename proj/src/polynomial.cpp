#include "gauss_rinv/polynomial.hpp"

namespace gauss_rinv {

namespace {

// Compositions of `remaining` into the trailing slots starting at `axis`,
// emitted in descending lexicographic order.
void compositions(MultiIndex& current, int axis, int remaining, std::vector<MultiIndex>& out) {
  if (axis == current.dim() - 1) {
    current[axis] = remaining;
    out.push_back(current);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    current[axis] = e;
    compositions(current, axis + 1, remaining - e, out);
  }
  current[axis] = 0;
}

}  // namespace

std::vector<MultiIndex> indices_of_degree(int dim, int degree) {
  if (dim < 1) throw std::invalid_argument("indices_of_degree: dimension must be positive");
  std::vector<MultiIndex> out;
  if (degree < 0) return out;
  MultiIndex current(dim);
  compositions(current, 0, degree, out);
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<MultiIndex> indices_up_to(int dim, int max_degree) {
  std::vector<MultiIndex> out;
  for (int d = 0; d <= max_degree; ++d) {
    auto level = indices_of_degree(dim, d);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

}  // namespace gauss_rinv
