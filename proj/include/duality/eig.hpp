#pragma once
// Deterministic complex eigendecomposition: lexicographically sorted
// eigenvalues, columns normalized so the first max-modulus entry equals 1,
// with explicit degeneracy and residual gates.

#include <vector>

#include "duality/matrix.hpp"

namespace duality {

struct eig_result {
  std::vector<cplx> values;  // sorted by (re, im)
  matrix<cplx> vectors;      // column k belongs to values[k]
};

// Full decomposition. Throws numeric_failure if any two eigenvalues are
// closer than sep_tol (ambiguous ordering) or if the reconstruction residual
// exceeds rtol * max(|A|, 1).
eig_result eig_sorted(const matrix<cplx>& a, double rtol = 1e-9,
                      double sep_tol = 1e-12);

// Eigenvalues only, lexicographically sorted, no degeneracy gate (used for
// spectra that are degenerate by design).
std::vector<cplx> eig_values(const matrix<cplx>& a);

}  // namespace duality
