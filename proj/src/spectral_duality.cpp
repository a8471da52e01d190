#include "duality/spectral_duality.hpp"

#include <vector>

namespace duality {

namespace {

// Row/column rescaling D X D^{-1} (or its inverse direction) with the
// diagonal D = diag(s), without forming inverses.
matrix<cplx> diag_sandwich(const std::vector<cplx>& s, const matrix<cplx>& x,
                           bool d_first) {
  const std::size_t n = x.rows();
  matrix<cplx> out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out(i, j) = d_first ? s[i] * x(i, j) / s[j] : x(i, j) * s[j] / s[i];
  return out;
}

}  // namespace

fictitious_conjugated fictitious_lax(model_kind k, const phase_point<cplx>& x,
                                     double rtol) {
  fictitious_conjugated out;
  out.dual = dualize(k, x, rtol);
  const std::size_t n = x.q.size();
  const matrix<cplx> ip = out.dual.psi.inverse();

  out.model.twist = matrix<cplx>::diagonal(out.dual.dual.q);
  out.model.poles = x.q;
  out.model.xi = matrix<cplx>(n, n);
  out.model.eta = matrix<cplx>(n, n);
  switch (k) {
    case model_kind::rational_cm: {
      out.model.kind = lax_kind::rational_gaudin;
      // xi^a = -nu Psi^{-1} (e - e_a), eta^a = row a of Psi
      std::vector<cplx> rowsum(n, cplx(0.0));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) rowsum[i] += ip(i, j);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t i = 0; i < n; ++i) {
          out.model.xi(i, a) = -x.nu * (rowsum[i] - ip(i, a));
          out.model.eta(a, i) = out.dual.psi(a, i);
        }
      break;
    }
    case model_kind::trig_cms: {
      out.model.kind = lax_kind::trig_gaudin_reduced;
      // xi = -nu Psi^{-1}, eta = W^{-1} (ones - I) W Psi
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t i = 0; i < n; ++i) {
          out.model.xi(i, a) = -x.nu * ip(i, a);
          cplx acc(0.0);
          for (std::size_t j = 0; j < n; ++j)
            if (j != a) acc += (x.q[j] / x.q[a]) * out.dual.psi(j, i);
          out.model.eta(a, i) = acc;
        }
      break;
    }
    case model_kind::trig_rs: {
      out.model.kind = lax_kind::xxz_chain;
      // xi = Psi^{-1} L^{-1} [L, W], eta = W^{-1} Psi
      const matrix<cplx> l = lax(k, x);
      const matrix<cplx> wd = matrix<cplx>::diagonal(x.q);
      out.model.xi = ip * l.inverse() * (l * wd - wd * l);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t i = 0; i < n; ++i)
          out.model.eta(a, i) = out.dual.psi(a, i) / x.q[a];
      break;
    }
    default:
      throw domain_violation(
          "fictitious_lax: supported for rational_cm, trig_cms, trig_rs");
  }
  validate_lax(out.model);
  return out;
}

pq_spectral_result pq_via_spectral(model_kind k, const phase_point<cplx>& x,
                                   double rtol) {
  fictitious_conjugated f = fictitious_lax(k, x, rtol);
  pq_spectral_result out;
  out.dual = f.dual;
  out.conjugated = f.model;
  out.dual_model = spectral_dual(f.model);

  const matrix<cplx> target = lax(out.dual.dual_kind, out.dual.dual);
  const matrix<cplx> ip = out.dual.psi.inverse();
  const std::vector<cplx>& dual_pos = out.dual_model.poles;

  const cplx bases[3] = {cplx(3.7, 1.1), cplx(-2.9, 0.4), cplx(1.6, -2.2)};
  const cplx shift(1.5, 0.7);
  for (const cplx& base : bases) {
    cplx lam = base;
    auto too_close = [&](const cplx& v) {
      for (const auto& p : dual_pos)
        if (std::abs(v - p) < 0.25) return true;
      return false;
    };
    while (too_close(lam)) lam += shift;
    out.lambda_samples.push_back(lam);

    const matrix<cplx> xmat = ip * evaluate(out.dual_model, lam) * out.dual.psi;
    std::vector<cplx> slam(dual_pos.size());
    for (std::size_t i = 0; i < slam.size(); ++i) slam[i] = lam - dual_pos[i];
    const bool d_first = k != model_kind::trig_cms;
    const matrix<cplx> rec = diag_sandwich(slam, xmat, d_first);
    out.sample_residuals.push_back(rel_distance(rec, target));
  }
  for (double r : out.sample_residuals)
    if (r > out.residual) out.residual = r;
  if (out.residual > rtol)
    throw numeric_failure("pq_via_spectral: reconstruction residual exceeds tolerance");
  return out;
}

}  // namespace duality
