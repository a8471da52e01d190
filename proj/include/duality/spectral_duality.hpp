#pragma once
// Spectral duality: bivariate spectral curves with the pole factors cleared,
// the twist<->pole swap that exchanges the two sides of the duality, and the
// fictitious spectral-parameter extensions of many-body Lax matrices that
// route the position-momentum duality through the spectral one.

#include <vector>

#include "duality/charpoly.hpp"
#include "duality/manybody.hpp"
#include "duality/matrix.hpp"
#include "duality/pq_duality.hpp"
#include "duality/spectral_models.hpp"

namespace duality {

// P(lambda, z) = sum_{i,j} coeff(i, j) lambda^i z^j, ascending in both.
template <class S>
struct bivariate_poly {
  matrix<S> coeff;

  std::size_t lambda_degree() const { return coeff.rows() - 1; }
  std::size_t z_degree() const { return coeff.cols() - 1; }
};

template <class S>
S evaluate_curve(const bivariate_poly<S>& p, const S& lambda, const S& z) {
  S acc = scalar_ops<S>::zero();
  for (std::size_t i = p.coeff.rows(); i-- > 0;) {
    S row = scalar_ops<S>::zero();
    for (std::size_t j = p.coeff.cols(); j-- > 0;) row = row * z + p.coeff(i, j);
    acc = acc * lambda + row;
  }
  return acc;
}

namespace detail {

// Integer sample points avoiding the poles: exact inequality on the exact
// backend, a 1/4 separation on floats.
template <class S>
std::vector<S> curve_samples(const std::vector<S>& poles, std::size_t count) {
  std::vector<S> out;
  long v = 0;
  while (out.size() < count) {
    const S cand = scalar_ops<S>::from_int(v++);
    bool ok = true;
    for (const auto& p : poles) {
      if constexpr (scalar_ops<S>::is_exact) {
        if (cand == p) ok = false;
      } else {
        if (scalar_ops<S>::approx_abs(cand - p) < 0.25) ok = false;
      }
    }
    if (ok) out.push_back(cand);
  }
  return out;
}

}  // namespace detail

// The cleared spectral curve P(lambda, z) = det(lambda I - L(z)) prod_k (z -
// z_k): a polynomial of degree n in lambda and m in z because every residue
// of L(z) is rank one. Recovered exactly by Lagrange interpolation of the
// characteristic polynomial over m+1 integer sample points.
template <class S>
bivariate_poly<S> spectral_poly(const multi_pole_lax<S>& L) {
  validate_lax(L);
  const std::size_t n = L.size();
  const std::size_t m = L.n_poles();
  const std::vector<S> zs = detail::curve_samples(L.poles, m + 1);

  // values(i, s) = [lambda^i] det(lambda - L(z_s)) * prod_k (z_s - z_k)
  matrix<S> values(n + 1, m + 1);
  for (std::size_t s = 0; s <= m; ++s) {
    const std::vector<S> cp = char_poly(evaluate(L, zs[s]));
    S clear = scalar_ops<S>::one();
    for (const auto& zk : L.poles) clear *= zs[s] - zk;
    for (std::size_t i = 0; i <= n; ++i) values(i, s) = cp[n - i] * clear;
  }

  bivariate_poly<S> out;
  out.coeff = matrix<S>(n + 1, m + 1);
  for (std::size_t s = 0; s <= m; ++s) {
    std::vector<S> numer{scalar_ops<S>::one()};
    S denom = scalar_ops<S>::one();
    for (std::size_t r = 0; r <= m; ++r) {
      if (r == s) continue;
      numer = poly_mul_linear(numer, zs[r]);
      denom *= zs[s] - zs[r];
    }
    for (std::size_t i = 0; i <= n; ++i) {
      const S w = values(i, s) / denom;
      for (std::size_t j = 0; j <= m; ++j) out.coeff(i, j) += w * numer[j];
    }
  }
  return out;
}

// The duality statement at curve level: P_dual(z, lambda) = P(lambda, z),
// i.e. transposed coefficient grids.
template <class S>
bool curves_transpose_equal(const bivariate_poly<S>& a, const bivariate_poly<S>& b) {
  if (a.coeff.rows() != b.coeff.cols() || a.coeff.cols() != b.coeff.rows())
    return false;
  return a.coeff == b.coeff.transpose();
}

template <class S>
double curves_transpose_distance(const bivariate_poly<S>& a,
                                 const bivariate_poly<S>& b) {
  return rel_distance(a.coeff, b.coeff.transpose());
}

// The dual side of each model family under the twist<->pole swap.
inline lax_kind dual_lax_kind(lax_kind k) {
  switch (k) {
    case lax_kind::rational_gaudin: return lax_kind::rational_gaudin;
    case lax_kind::xxx_chain: return lax_kind::trig_gaudin_reduced;
    case lax_kind::trig_gaudin_reduced: return lax_kind::xxx_chain;
    case lax_kind::xxz_chain: return lax_kind::xxz_chain;
  }
  throw domain_violation("dual_lax_kind: unknown kind");
}

// Spectral-dual model: the twist eigenvalues and the poles trade places and
// the rank-one factors swap roles,
//   twist -> diag(poles), poles -> diag(twist), xi -> eta, eta -> xi,
// which turns det(lambda - L(z)) prod_k (z - z_k) into the same polynomial
// with lambda and z exchanged. Requires a diagonal twist with distinct
// eigenvalues (nonzero when the dual kind weights its poles).
template <class S>
multi_pole_lax<S> spectral_dual(const multi_pole_lax<S>& L) {
  validate_lax(L);
  const std::size_t n = L.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && !scalar_ops<S>::is_zero(L.twist(i, j)))
        throw domain_violation("spectral_dual: twist must be diagonal");
  const std::vector<S> tw = L.twist.diag();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (tw[i] == tw[j])
        throw domain_violation("spectral_dual: twist eigenvalues must be distinct");
  multi_pole_lax<S> out;
  out.kind = dual_lax_kind(L.kind);
  if (pole_weighted(out.kind))
    for (const auto& t : tw)
      if (scalar_ops<S>::is_zero(t))
        throw domain_violation(
            "spectral_dual: twist eigenvalues must be nonzero for the dual kind");
  out.twist = matrix<S>::diagonal(L.poles);
  out.poles = tw;
  out.xi = L.eta;
  out.eta = L.xi;
  validate_lax(out);
  return out;
}

// ---------------------------------------------------------------------------
// Fictitious spectral-parameter extension of a many-body Lax matrix: the full
// Lax sits in the constant slot, the poles sit at the particle positions, and
// each position carries the rank-one residue that makes det(lambda - L(z))
// independent of z (plain-sum semantics). The z-independence is equivalent
// to the moment-map constraint and is bit-exact on the exact backend.

template <class S>
multi_pole_lax<S> fictitious_lax_raw(model_kind k, const phase_point<S>& x) {
  validate_phase_point(k, x);
  const std::size_t n = x.q.size();
  const matrix<S> l = lax(k, x);
  multi_pole_lax<S> out;
  out.kind = lax_kind::rational_gaudin;
  out.twist = l;
  out.poles = x.q;
  out.xi = matrix<S>(n, n);
  out.eta = matrix<S>(n, n);
  switch (k) {
    case model_kind::rational_cm:
      // R^a = -nu (e - e_a) e_a^T
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t i = 0; i < n; ++i)
          out.xi(i, a) = i == a ? scalar_ops<S>::zero() : -x.nu;
        out.eta(a, a) = scalar_ops<S>::one();
      }
      break;
    case model_kind::trig_cms:
      // R^a = e_a r^a with r^a_j = -nu (1 - delta_aj) w_j
      for (std::size_t a = 0; a < n; ++a) {
        out.xi(a, a) = scalar_ops<S>::one();
        for (std::size_t j = 0; j < n; ++j)
          out.eta(a, j) = a == j ? scalar_ops<S>::zero() : -x.nu * x.q[j];
      }
      break;
    case model_kind::trig_rs: {
      // R^a = [L, W] E_aa
      const matrix<S> wd = matrix<S>::diagonal(x.q);
      const matrix<S> c = l * wd - wd * l;
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t i = 0; i < n; ++i) out.xi(i, a) = c(i, a);
        out.eta(a, a) = scalar_ops<S>::one();
      }
    } break;
    default:
      throw domain_violation(
          "fictitious_lax_raw: supported for rational_cm, trig_cms, trig_rs");
  }
  validate_lax(out);
  return out;
}

// The same model conjugated by the gauge-fixed diagonalizer from the
// position-momentum duality map, in the canonical kind whose weighted
// evaluation reproduces Psi^{-1} L_raw(z) Psi:
//   rational_cm -> rational_gaudin      twist diag(dual positions)
//   trig_cms    -> trig_gaudin_reduced  twist diag(dual positions)
//   trig_rs     -> xxz_chain            twist diag(dual positions)
// Float backend only (the diagonalizer comes from an eigendecomposition).
struct fictitious_conjugated {
  duality_map_result dual;
  multi_pole_lax<cplx> model;
};

fictitious_conjugated fictitious_lax(model_kind k, const phase_point<cplx>& x,
                                     double rtol = 1e-8);

// Full pipeline: build the conjugated fictitious model, apply the spectral
// dual, evaluate it at sample values of the dual spectral parameter, and
// undo the gauge to recover the canonical dual many-body Lax matrix.
struct pq_spectral_result {
  duality_map_result dual;
  multi_pole_lax<cplx> conjugated;
  multi_pole_lax<cplx> dual_model;
  std::vector<cplx> lambda_samples;
  std::vector<double> sample_residuals;  // vs the canonical dual Lax
  double residual = 0.0;                 // max over samples
};

pq_spectral_result pq_via_spectral(model_kind k, const phase_point<cplx>& x,
                                   double rtol = 1e-8);

}  // namespace duality
