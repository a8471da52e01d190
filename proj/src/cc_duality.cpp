#include "duality/cc_duality.hpp"

#include "duality/pq_duality.hpp"

namespace duality {

conjugated_connection conjugate_connection(connection_kind k,
                                           const phase_point<cplx>& x,
                                           double rtol) {
  conjugated_connection out;
  out.dual = dualize(model_kind::rational_cm, x, rtol);
  const matrix<cplx> ip = out.dual.psi.inverse();
  const pole_connection<cplx> conn = cm_connection(k, x);
  const std::size_t n = x.q.size();

  out.model.kind = lax_kind::rational_gaudin;
  out.model.twist = matrix<cplx>::diagonal(out.dual.dual.q);
  out.model.poles = conn.poles;
  out.model.xi = matrix<cplx>(n, n);
  out.model.eta = matrix<cplx>(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    const matrix<cplx> sk = ip * conn.residues[a] * out.dual.psi;
    const rank_one_factors<cplx> f = rank_one_factor(sk, 1e-9);
    for (std::size_t i = 0; i < n; ++i) {
      out.model.xi(i, a) = f.xi[i];
      out.model.eta(a, i) = f.eta[i];
    }
  }
  validate_lax(out.model);
  return out;
}

}  // namespace duality
