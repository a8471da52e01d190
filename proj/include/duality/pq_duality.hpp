#pragma once
// Position-momentum duality maps for the many-body family, built from the
// eigenvalue problem of the Lax matrix: the sorted spectrum provides the dual
// positions and the diagonal of the conjugated position matrix provides the
// dual momenta. Float backend only (eigendecomposition inside).
//
// Map table (dual coupling in natural coordinates):
//   rational_cm -> rational_cm   with coupling -nu
//   trig_cms    -> rational_rs   with coupling  nu
//   rational_rs -> trig_cms      with coupling  nu
//   trig_rs     -> trig_rs       with coupling  1/t

#include "duality/manybody.hpp"

namespace duality {

struct duality_map_result {
  model_kind source_kind;
  model_kind dual_kind;
  phase_point<cplx> dual;  // natural coordinates, dual coupling included
  matrix<cplx> psi;        // gauge-fixed diagonalizer of the source Lax
  double residual;         // reconstructed dual Lax vs canonical dual Lax
};

model_kind dual_kind_of(model_kind k);

// Applies the duality map. Throws numeric_failure when the reconstruction
// residual exceeds rtol (pass +infinity to always return).
duality_map_result dualize(model_kind k, const phase_point<cplx>& x,
                           double rtol = 1e-8);

// Applies the map twice and returns the largest coordinate mismatch with the
// original point after sorting both by position (lexicographic), relative to
// max(1, |coordinates|).
double involution_residual(model_kind k, const phase_point<cplx>& x,
                           double rtol = 1e-8);

// Central-difference Jacobian probe that the map is anticanonical:
// J^T Omega J = -Omega in additive Darboux coordinates. Returns the largest
// entry of J^T Omega J + Omega.
double anticanonical_residual(model_kind k, const phase_point<cplx>& x,
                              double h = 1e-5);

}  // namespace duality
