#pragma once
// Rank-one factorization A = xi (outer) eta with a deterministic pivot:
// the first entry of largest magnitude (row-major scan) anchors eta to the
// pivot row and normalizes xi to 1 at the pivot row.

#include <vector>

#include "duality/matrix.hpp"

namespace duality {

template <class S>
struct rank_one_factors {
  std::vector<S> xi;   // column factor, xi[pivot_row] == 1
  std::vector<S> eta;  // row factor, the pivot row of A
};

template <class S>
rank_one_factors<S> rank_one_factor(const matrix<S>& a, double rel_tol = 1e-9) {
  std::size_t pr = 0, pc = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      double v = scalar_ops<S>::approx_abs(a(i, j));
      if (v > best) {
        best = v;
        pr = i;
        pc = j;
      }
    }
  if (a.is_zero())
    throw domain_violation("rank_one_factor: zero matrix has no rank-one factorization");

  rank_one_factors<S> f;
  f.eta = a.row(pr);
  f.xi.resize(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) f.xi[i] = a(i, pc) / a(pr, pc);

  const matrix<S> rec = matrix<S>::outer(f.xi, f.eta);
  if constexpr (scalar_ops<S>::is_exact) {
    if (!(rec == a))
      throw numeric_failure("rank_one_factor: matrix is not rank one (exact)");
  } else {
    if (distance(rec, a) > rel_tol * std::max(1.0, a.max_abs()))
      throw numeric_failure("rank_one_factor: matrix is not rank one within tolerance");
  }
  return f;
}

}  // namespace duality
