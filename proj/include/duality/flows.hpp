#pragma once
// Hamiltonian flows: fixed-step fourth-order integration of the many-body
// equations of motion with invariant-drift diagnostics, Gaudin-type flows on
// dense residues, and the isomonodromic (Schlesinger) consistency identity in
// exact arithmetic.

#include <cstddef>
#include <vector>

#include "duality/cc_duality.hpp"
#include "duality/manybody.hpp"
#include "duality/matrix.hpp"

namespace duality {

// ---------------------------------------------------------------------------
// Many-body flows (float backend). The state is integrated in additive
// coordinates; multiplicative positions/momenta are exponentiated on the fly.

struct flow_result {
  phase_point<cplx> end;
  std::vector<double> invariant_drift;  // relative drift of tr L^k, k = 2..N
  double max_drift = 0.0;
  double t_end = 0.0;
  int steps = 0;
};

flow_result evolve_manybody(model_kind k, const phase_point<cplx>& x, double t_end,
                            int steps);

// Drift ratio between step counts n and 2n; close to 2^4 = 16 for a
// fourth-order scheme once the drift sits above roundoff.
double flow_convergence_ratio(model_kind k, const phase_point<cplx>& x,
                              double t_end, int steps);

// ---------------------------------------------------------------------------
// Gaudin flows on dense residues. The connection is
//   L(z) = Lambda + sum_c S^c / (z - z_c)
// and the flow generated by the pole Hamiltonian H_a moves the residues by
// commutators (poles and Lambda stay fixed):
//   dS^j/dt_a = -[S^a, S^j]/(z_a - z_j)                  (j != a)
//   dS^a/dt_a = sum_{k != a} [S^a, S^k]/(z_a - z_k) + [S^a, Lambda].
template <class S>
std::vector<matrix<S>> schlesinger_vector_field(const pole_connection<S>& conn,
                                                std::size_t a) {
  validate_connection(conn);
  const std::size_t m = conn.poles.size();
  if (a >= m) throw domain_violation("schlesinger_vector_field: flow index out of range");
  auto comm = [](const matrix<S>& x, const matrix<S>& y) { return x * y - y * x; };
  std::vector<matrix<S>> vf;
  vf.reserve(m);
  const matrix<S>& sa = conn.residues[a];
  for (std::size_t j = 0; j < m; ++j) {
    if (j != a) {
      vf.push_back((scalar_ops<S>::one() / (conn.poles[a] - conn.poles[j])) *
                   comm(conn.residues[j], sa));  // = -[S^a, S^j]/(z_a - z_j)
    } else {
      matrix<S> acc = comm(sa, conn.base);
      for (std::size_t c = 0; c < m; ++c) {
        if (c == a) continue;
        acc += (scalar_ops<S>::one() / (conn.poles[a] - conn.poles[c])) *
               comm(sa, conn.residues[c]);
      }
      vf.push_back(acc);
    }
  }
  return vf;
}

// Isomonodromic consistency residual for the a-th flow at spectral value z,
// with the flow speed scaled by kappa:
//   kappa sum_c VF_c/(z - z_c) + kappa S^a/(z - z_a)^2
//     - [L(z), kappa M_a(z)] - d/dz (kappa M_a(z)),   M_a(z) = -S^a/(z - z_a).
// Identically zero when VF is the vector field above; vf_override substitutes
// a candidate vector field (unscaled), and a perturbation of VF_c by eps E
// shifts the residual by exactly kappa eps E/(z - z_c).
template <class S>
matrix<S> schlesinger_residual_matrix(const pole_connection<S>& conn, std::size_t a,
                                      const S& z, const S& kappa,
                                      const std::vector<matrix<S>>* vf_override = nullptr) {
  validate_connection(conn);
  const std::size_t m = conn.poles.size();
  if (a >= m)
    throw domain_violation("schlesinger_residual_matrix: flow index out of range");
  const std::vector<matrix<S>> vf =
      vf_override ? *vf_override : schlesinger_vector_field(conn, a);
  if (vf.size() != m)
    throw domain_violation("schlesinger_residual_matrix: vector field size mismatch");

  const matrix<S> l = connection_value(conn, z);  // also rejects z at a pole
  const S da = scalar_ops<S>::one() / (z - conn.poles[a]);
  const matrix<S> ma = (-kappa * da) * conn.residues[a];

  matrix<S> res = (kappa * da * da) * conn.residues[a];  // explicit pole motion
  res -= (kappa * da * da) * conn.residues[a];           // d/dz of M_a
  res -= l * ma - ma * l;
  for (std::size_t c = 0; c < m; ++c)
    res += (kappa / (z - conn.poles[c])) * vf[c];
  return res;
}

// ---------------------------------------------------------------------------
// Float-backend integration of the Gaudin flow with conservation diagnostics.

struct gaudin_flow_result {
  pole_connection<cplx> end;
  double casimir_drift = 0.0;      // tr (S^j)^2
  double hamiltonian_drift = 0.0;  // all pole Hamiltonians
  double spectral_drift = 0.0;     // char poly of L(z) at fixed samples
  double max_drift = 0.0;
  double t_end = 0.0;
  int steps = 0;
};

gaudin_flow_result evolve_gaudin(const pole_connection<cplx>& conn,
                                 std::size_t flow_index, double t_end, int steps);

// Relative distance between the two orderings of the a- and b-flows run one
// after the other; small when the pole Hamiltonians are in involution.
double gaudin_flow_commutation(const pole_connection<cplx>& conn, std::size_t a,
                               std::size_t b, double t_end, int steps);

}  // namespace duality
