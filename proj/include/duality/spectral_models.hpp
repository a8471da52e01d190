#pragma once
// Spectral-parameter models with first-order poles and rank-one residues:
// rational and trigonometric Gaudin-type Lax matrices, inhomogeneous XXX and
// XXZ chain monodromies, the triangular gauge lemma that removes constant
// lower-triangular parts, and classical r-matrices with the Yang-Baxter
// residual.

#include <string>
#include <vector>

#include "duality/matrix.hpp"
#include "duality/rank_one.hpp"

namespace duality {

enum class lax_kind { rational_gaudin, trig_gaudin_reduced, xxx_chain, xxz_chain };

inline const char* lax_kind_name(lax_kind k) {
  switch (k) {
    case lax_kind::rational_gaudin: return "rational_gaudin";
    case lax_kind::trig_gaudin_reduced: return "trig_gaudin_reduced";
    case lax_kind::xxx_chain: return "xxx_chain";
    case lax_kind::xxz_chain: return "xxz_chain";
  }
  throw domain_violation("lax_kind_name: unknown kind");
}

inline lax_kind lax_kind_from_name(const std::string& s) {
  if (s == "rational_gaudin") return lax_kind::rational_gaudin;
  if (s == "trig_gaudin_reduced") return lax_kind::trig_gaudin_reduced;
  if (s == "xxx_chain") return lax_kind::xxx_chain;
  if (s == "xxz_chain") return lax_kind::xxz_chain;
  throw domain_violation("lax_kind_from_name: unknown kind '" + s + "'");
}

// L(z) by kind, with S^k = xi[:,k] (outer) eta[k,:]:
//   rational_gaudin     : T + sum_k S^k / (z - z_k)
//   trig_gaudin_reduced : T + sum_k z_k S^k / (z - z_k)
//   xxx_chain           : T (I + sum_k S^k / (z - z_k))
//   xxz_chain           : T (I + sum_k z_k S^k / (z - z_k))
// The twist T is stored as a full matrix: canonical models carry a diagonal
// twist, while the spectral-parameter extensions of many-body Lax matrices
// put the full many-body Lax in the twist slot (rational_gaudin semantics).
template <class S>
struct multi_pole_lax {
  lax_kind kind = lax_kind::rational_gaudin;
  matrix<S> twist;       // n x n
  std::vector<S> poles;  // m, pairwise distinct (nonzero when z_k-weighted)
  matrix<S> xi;          // n x m
  matrix<S> eta;         // m x n

  std::size_t size() const { return twist.rows(); }
  std::size_t n_poles() const { return poles.size(); }
};

inline bool pole_weighted(lax_kind k) {
  return k == lax_kind::trig_gaudin_reduced || k == lax_kind::xxz_chain;
}
inline bool twist_multiplies(lax_kind k) {
  return k == lax_kind::xxx_chain || k == lax_kind::xxz_chain;
}

template <class S>
void validate_lax(const multi_pole_lax<S>& L) {
  const std::size_t n = L.twist.rows();
  const std::size_t m = L.poles.size();
  if (!L.twist.square()) throw domain_violation("multi_pole_lax: twist must be square");
  if (L.xi.rows() != n || L.xi.cols() != m)
    throw domain_violation("multi_pole_lax: xi must be n x m");
  if (L.eta.rows() != m || L.eta.cols() != n)
    throw domain_violation("multi_pole_lax: eta must be m x n");
  for (std::size_t k = 0; k < m; ++k) {
    if (pole_weighted(L.kind) && scalar_ops<S>::is_zero(L.poles[k]))
      throw domain_violation("multi_pole_lax: poles must be nonzero for this kind");
    for (std::size_t l = k + 1; l < m; ++l)
      if (L.poles[k] == L.poles[l])
        throw domain_violation("multi_pole_lax: poles must be pairwise distinct");
  }
}

// Unweighted rank-one factor S^k; evaluate() applies kind weights.
template <class S>
matrix<S> core_residue(const multi_pole_lax<S>& L, std::size_t k) {
  return matrix<S>::outer(L.xi.col(k), L.eta.row(k));
}

template <class S>
matrix<S> evaluate(const multi_pole_lax<S>& L, const S& z) {
  validate_lax(L);
  const std::size_t n = L.size();
  for (const S& zk : L.poles)
    if (z == zk) throw domain_violation("multi_pole_lax: evaluation at a pole");
  matrix<S> core(n, n);
  for (std::size_t k = 0; k < L.n_poles(); ++k) {
    S w = scalar_ops<S>::one() / (z - L.poles[k]);
    if (pole_weighted(L.kind)) w *= L.poles[k];
    core += w * core_residue(L, k);
  }
  if (twist_multiplies(L.kind))
    return L.twist * (matrix<S>::identity(n) + core);
  return L.twist + core;
}

// True residue of evaluate() at pole k (kind weights and twist included).
template <class S>
matrix<S> residue_at(const multi_pole_lax<S>& L, std::size_t k) {
  matrix<S> r = core_residue(L, k);
  if (pole_weighted(L.kind)) r = L.poles[k] * r;
  if (twist_multiplies(L.kind)) r = L.twist * r;
  return r;
}

// z -> infinity limit of evaluate(): the twist for every kind.
template <class S>
matrix<S> constant_term(const multi_pole_lax<S>& L) {
  return L.twist;
}

// ---------------------------------------------------------------------------
// Triangular gauge lemma: for Lambda = diag(lambda) with distinct entries and
// a strictly lower-triangular Sbar, the unitriangular g below solves
// g^{-1} (Lambda + Sbar) g = Lambda.

// Recursive form, valid for any strictly lower Sbar:
// G_ij (lambda_j - lambda_i) = Sbar_ij + sum_{j<d<i} Sbar_id G_dj, g = I + G.
template <class S>
matrix<S> gauge_matrix_recursive(const std::vector<S>& lambda, const matrix<S>& sbar) {
  const std::size_t n = lambda.size();
  if (sbar.rows() != n || sbar.cols() != n)
    throw domain_violation("gauge_matrix: shape mismatch");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (!scalar_ops<S>::is_zero(sbar(i, j)))
        throw domain_violation("gauge_matrix: sbar must be strictly lower triangular");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (lambda[i] == lambda[j])
        throw domain_violation("gauge_matrix: twist eigenvalues must be distinct");
  matrix<S> g = matrix<S>::identity(n);
  for (std::size_t band = 1; band < n; ++band)
    for (std::size_t j = 0; j + band < n; ++j) {
      const std::size_t i = j + band;
      S acc = sbar(i, j);
      for (std::size_t d = j + 1; d < i; ++d) acc += sbar(i, d) * g(d, j);
      g(i, j) = acc / (lambda[j] - lambda[i]);
    }
  return g;
}

// Closed product form for Sbar = strictly lower part of xi * eta, with xi of
// shape n x m and eta of shape m x n:
// g_ij = [xi_i . prod_{p=i-1..j+1} (I_m + eta_p xi_p / (lambda_j - lambda_p))
//         . eta_j] / (lambda_j - lambda_i)   for i > j,
// where xi_i is the i-th row of xi and eta_j the j-th column of eta.
template <class S>
matrix<S> gauge_matrix_closed(const std::vector<S>& lambda, const matrix<S>& xi,
                              const matrix<S>& eta) {
  const std::size_t n = lambda.size();
  const std::size_t m = xi.cols();
  if (xi.rows() != n || eta.rows() != m || eta.cols() != n)
    throw domain_violation("gauge_matrix: factor shape mismatch");
  matrix<S> g = matrix<S>::identity(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = j + 1; i < n; ++i) {
      matrix<S> prod = matrix<S>::identity(m);
      for (std::size_t p = i - 1; p > j; --p) {
        const matrix<S> outer = matrix<S>::outer(eta.col(p), xi.row(p));
        prod = prod * (matrix<S>::identity(m) +
                       (scalar_ops<S>::one() / (lambda[j] - lambda[p])) * outer);
      }
      // xi_i . prod . eta_j
      const std::vector<S> xr = xi.row(i);
      const std::vector<S> ec = eta.col(j);
      S val = scalar_ops<S>::zero();
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) val += xr[a] * prod(a, b) * ec[b];
      g(i, j) = val / (lambda[j] - lambda[i]);
    }
  return g;
}

// Computes both forms, cross-checks them (bit-exact on the exact backend,
// within cross_tol relative on floats), and returns the gauge.
template <class S>
matrix<S> gauge_matrix(const std::vector<S>& lambda, const matrix<S>& xi,
                       const matrix<S>& eta, double cross_tol = 1e-9) {
  const std::size_t n = lambda.size();
  const matrix<S> full = xi * eta;
  matrix<S> sbar(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) sbar(i, j) = full(i, j);
  const matrix<S> rec = gauge_matrix_recursive(lambda, sbar);
  const matrix<S> closed = gauge_matrix_closed(lambda, xi, eta);
  if constexpr (scalar_ops<S>::is_exact) {
    if (!(rec == closed))
      throw numeric_failure("gauge_matrix: cross-check mismatch between forms");
  } else {
    if (rel_distance(rec, closed) > cross_tol)
      throw numeric_failure("gauge_matrix: cross-check mismatch between forms");
  }
  return rec;
}

// ---------------------------------------------------------------------------
// Raw trigonometric Gaudin form Lambda + Sbar + sum_k z_k S^k/(z - z_k) with
// Sbar the strictly lower part of xi*eta, and its gauge reduction to the
// canonical trig_gaudin_reduced model.

template <class S>
struct trig_gaudin_raw {
  std::vector<S> lambda;  // additive twist eigenvalues, pairwise distinct
  std::vector<S> poles;   // nonzero, pairwise distinct
  matrix<S> xi;           // n x m
  matrix<S> eta;          // m x n
};

template <class S>
matrix<S> evaluate_raw(const trig_gaudin_raw<S>& raw, const S& z) {
  const std::size_t n = raw.lambda.size();
  const matrix<S> full = raw.xi * raw.eta;
  matrix<S> out = matrix<S>::diagonal(raw.lambda);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) out(i, j) += full(i, j);
  for (std::size_t k = 0; k < raw.poles.size(); ++k) {
    if (z == raw.poles[k])
      throw domain_violation("evaluate_raw: evaluation at a pole");
    const S w = raw.poles[k] / (z - raw.poles[k]);
    out += w * matrix<S>::outer(raw.xi.col(k), raw.eta.row(k));
  }
  return out;
}

template <class S>
struct gauge_reduction {
  multi_pole_lax<S> model;
  matrix<S> gauge;
};

// g^{-1} L_raw(z) g with the cross-checked gauge removes Sbar; the conjugated
// residues are refactored into rank-one form with the deterministic pivot.
template <class S>
gauge_reduction<S> trig_gaudin_reduce(const trig_gaudin_raw<S>& raw,
                                      double cross_tol = 1e-9) {
  const std::size_t n = raw.lambda.size();
  const std::size_t m = raw.poles.size();
  const matrix<S> g = gauge_matrix(raw.lambda, raw.xi, raw.eta, cross_tol);
  const matrix<S> gi = g.inverse();
  gauge_reduction<S> out;
  out.gauge = g;
  out.model.kind = lax_kind::trig_gaudin_reduced;
  out.model.twist = matrix<S>::diagonal(raw.lambda);
  out.model.poles = raw.poles;
  out.model.xi = matrix<S>(n, m);
  out.model.eta = matrix<S>(m, n);
  for (std::size_t k = 0; k < m; ++k) {
    const matrix<S> sk =
        gi * matrix<S>::outer(raw.xi.col(k), raw.eta.row(k)) * g;
    const rank_one_factors<S> f = rank_one_factor(sk, cross_tol);
    for (std::size_t i = 0; i < n; ++i) {
      out.model.xi(i, k) = f.xi[i];
      out.model.eta(k, i) = f.eta[i];
    }
  }
  validate_lax(out.model);
  return out;
}

// ---------------------------------------------------------------------------
// Chain monodromies. A site carries the rank-one matrix B = xi (outer) eta
// and an inhomogeneity pole.

template <class S>
struct chain_site {
  S pole;
  std::vector<S> xi;
  std::vector<S> eta;
};

template <class S>
void validate_sites(const std::vector<chain_site<S>>& sites, bool nonzero_poles) {
  if (sites.empty()) throw domain_violation("monodromy: no sites");
  const std::size_t n = sites[0].xi.size();
  for (const auto& s : sites) {
    if (s.xi.size() != n || s.eta.size() != n)
      throw domain_violation("monodromy: site factor size mismatch");
    if (nonzero_poles && scalar_ops<S>::is_zero(s.pole))
      throw domain_violation("monodromy: site poles must be nonzero");
  }
  for (std::size_t a = 0; a < sites.size(); ++a)
    for (std::size_t b = a + 1; b < sites.size(); ++b)
      if (sites[a].pole == sites[b].pole)
        throw domain_violation("monodromy: site poles must be pairwise distinct");
}

namespace detail {

template <class S>
matrix<S> xxx_local(const chain_site<S>& site, const S& z) {
  const std::size_t n = site.xi.size();
  matrix<S> l = matrix<S>::identity(n);
  const S w = scalar_ops<S>::one() / (z - site.pole);
  l += w * matrix<S>::outer(site.xi, site.eta);
  return l;
}

template <class S>
matrix<S> xxz_local(const chain_site<S>& site, const S& z) {
  const std::size_t n = site.xi.size();
  const matrix<S> b = matrix<S>::outer(site.xi, site.eta);
  matrix<S> l = matrix<S>::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) l(i, j) += b(i, j);
  const S w = site.pole / (z - site.pole);
  l += w * b;
  return l;
}

}  // namespace detail

// Direct product evaluation T(z) = V L^M(z) ... L^1(z) for tests and
// cross-checks; kind selects the local Lax form (xxx_chain or xxz_chain).
template <class S>
matrix<S> monodromy_product(const matrix<S>& twist,
                            const std::vector<chain_site<S>>& sites,
                            lax_kind kind, const S& z) {
  validate_sites(sites, kind == lax_kind::xxz_chain);
  matrix<S> t = twist;
  for (std::size_t k = sites.size(); k-- > 0;) {
    t = t * (kind == lax_kind::xxz_chain ? detail::xxz_local(sites[k], z)
                                         : detail::xxx_local(sites[k], z));
  }
  return t;
}

// The XXX monodromy is already a sum-form model: constant term V and
// rank-one residues given by the partial products evaluated at each pole.
template <class S>
multi_pole_lax<S> xxx_monodromy(const matrix<S>& twist,
                                const std::vector<chain_site<S>>& sites) {
  validate_sites(sites, false);
  const std::size_t n = sites[0].xi.size();
  const std::size_t m = sites.size();
  if (!twist.square() || twist.rows() != n)
    throw domain_violation("xxx_monodromy: twist shape mismatch");
  multi_pole_lax<S> out;
  out.kind = lax_kind::xxx_chain;
  out.twist = twist;
  out.poles.resize(m);
  out.xi = matrix<S>(n, m);
  out.eta = matrix<S>(m, n);
  for (std::size_t k = 0; k < m; ++k) {
    out.poles[k] = sites[k].pole;
    matrix<S> left = matrix<S>::identity(n);
    for (std::size_t j = m; j-- > k + 1;)
      left = left * detail::xxx_local(sites[j], sites[k].pole);
    matrix<S> right = matrix<S>::identity(n);
    for (std::size_t j = k; j-- > 0;)
      right = right * detail::xxx_local(sites[j], sites[k].pole);
    // S^k = (left xi_k) (outer) (eta_k right)
    std::vector<S> xk(n, scalar_ops<S>::zero()), ek(n, scalar_ops<S>::zero());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        xk[i] += left(i, j) * sites[k].xi[j];
        ek[i] += sites[k].eta[j] * right(j, i);
      }
    for (std::size_t i = 0; i < n; ++i) {
      out.xi(i, k) = xk[i];
      out.eta(k, i) = ek[i];
    }
  }
  validate_lax(out);
  return out;
}

// The XXZ monodromy has a constant lower-triangular part V(I + Ubar) from
// the product of local triangular pieces; the gauge lemma with Lambda = V
// and Sbar = V Ubar removes it, after which the residues are rank one again.
template <class S>
struct gauged_monodromy {
  multi_pole_lax<S> model;
  matrix<S> gauge;
};

template <class S>
gauged_monodromy<S> xxz_monodromy(const matrix<S>& twist,
                                  const std::vector<chain_site<S>>& sites,
                                  double tol = 1e-9) {
  validate_sites(sites, true);
  const std::size_t n = sites[0].xi.size();
  const std::size_t m = sites.size();
  if (!twist.square() || twist.rows() != n)
    throw domain_violation("xxz_monodromy: twist shape mismatch");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j && scalar_ops<S>::is_zero(twist(i, i)))
        throw domain_violation("xxz_monodromy: twist diagonal must be nonzero");
      if (i != j && !scalar_ops<S>::is_zero(twist(i, j)))
        throw domain_violation("xxz_monodromy: twist must be diagonal");
      if (i != j && twist(i, i) == twist(j, j))
        throw domain_violation("xxz_monodromy: twist entries must be distinct");
    }

  // Constant term V (I + Ubar) with I + Ubar = prod_k (I + Bbar^k).
  matrix<S> prod = matrix<S>::identity(n);
  for (std::size_t k = m; k-- > 0;) {
    const matrix<S> b = matrix<S>::outer(sites[k].xi, sites[k].eta);
    matrix<S> lower = matrix<S>::identity(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) lower(i, j) = b(i, j);
    prod = prod * lower;
  }
  const matrix<S> sbar = twist * (prod - matrix<S>::identity(n));
  matrix<S> sbar_strict(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) sbar_strict(i, j) = sbar(i, j);
  const matrix<S> g = gauge_matrix_recursive(twist.diag(), sbar_strict);
  const matrix<S> gi = g.inverse();
  const matrix<S> vi = twist.inverse();

  gauged_monodromy<S> out;
  out.gauge = g;
  out.model.kind = lax_kind::xxz_chain;
  out.model.twist = twist;
  out.model.poles.resize(m);
  out.model.xi = matrix<S>(n, m);
  out.model.eta = matrix<S>(m, n);
  for (std::size_t k = 0; k < m; ++k) {
    out.model.poles[k] = sites[k].pole;
    matrix<S> left = twist;
    for (std::size_t j = m; j-- > k + 1;)
      left = left * detail::xxz_local(sites[j], sites[k].pole);
    matrix<S> right = matrix<S>::identity(n);
    for (std::size_t j = k; j-- > 0;)
      right = right * detail::xxz_local(sites[j], sites[k].pole);
    const matrix<S> rk =
        left * (sites[k].pole * matrix<S>::outer(sites[k].xi, sites[k].eta)) * right;
    const matrix<S> sk = (scalar_ops<S>::one() / sites[k].pole) * (vi * gi * rk * g);
    const rank_one_factors<S> f = rank_one_factor(sk, tol);
    for (std::size_t i = 0; i < n; ++i) {
      out.model.xi(i, k) = f.xi[i];
      out.model.eta(k, i) = f.eta[i];
    }
  }
  validate_lax(out.model);
  return out;
}

// ---------------------------------------------------------------------------
// Classical r-matrices on C^n (x) C^n and the Yang-Baxter residual.

enum class r_matrix_kind { xxz_multiplicative, twisted };

// r(z) = sum_{i,j} c_ij(z) E_ij (x) E_ji with
//   xxz_multiplicative: c_ij = (z+1)/(z-1) + sign(j-i)
//   twisted           : c_ij = 1/(z-1) + [i > j]
template <class S>
matrix<S> r_matrix(r_matrix_kind kind, std::size_t n, const S& z) {
  if (z == scalar_ops<S>::one())
    throw domain_violation("r_matrix: pole at z = 1");
  matrix<S> out(n * n, n * n);
  const S one = scalar_ops<S>::one();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      S c;
      if (kind == r_matrix_kind::xxz_multiplicative) {
        c = (z + one) / (z - one);
        if (j > i) c += one;
        if (j < i) c -= one;
      } else {
        c = one / (z - one);
        if (i > j) c += one;
      }
      // E_ij (x) E_ji has its single entry at (i*n + j, j*n + i).
      out(i * n + j, j * n + i) = c;
    }
  return out;
}

namespace detail {

// Embed r = sum alpha E_ij (x) E_kl into slots (a, b) of a triple product.
template <class S>
matrix<S> embed_pair(const matrix<S>& r, std::size_t n, int slot_a, int slot_b) {
  const std::size_t n3 = n * n * n;
  matrix<S> out(n3, n3);
  // index in slot s contributes with stride n^(2-s)
  auto stride = [n](int s) -> std::size_t {
    return s == 0 ? n * n : (s == 1 ? n : 1);
  };
  const std::size_t sa = stride(slot_a), sb = stride(slot_b);
  int slot_c = 3 - slot_a - slot_b;
  const std::size_t sc = stride(slot_c);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          const S& a = r(i * n + k, j * n + l);
          if (scalar_ops<S>::is_zero(a)) continue;
          for (std::size_t c = 0; c < n; ++c)
            out(i * sa + k * sb + c * sc, j * sa + l * sb + c * sc) += a;
        }
  return out;
}

}  // namespace detail

// Classical Yang-Baxter combination in multiplicative arguments.
//   xxz_multiplicative (skew):
//     [r12(z1/z2), r23(z2/z3)] + [r12(z1/z2), r13(z1/z3)] + [r13(z1/z3), r23(z2/z3)]
//   twisted (non-skew):
//     [r12(z1/z2), r23(z2/z3)] + [r12(z1/z2), r13(z1/z3)] + [r32(z3/z2), r13(z1/z3)]
template <class S>
matrix<S> cybe_combination(r_matrix_kind kind, std::size_t n, const S& z1,
                           const S& z2, const S& z3) {
  auto comm = [](const matrix<S>& a, const matrix<S>& b) { return a * b - b * a; };
  const matrix<S> r12 = detail::embed_pair(r_matrix(kind, n, z1 / z2), n, 0, 1);
  const matrix<S> r13 = detail::embed_pair(r_matrix(kind, n, z1 / z3), n, 0, 2);
  const matrix<S> r23 = detail::embed_pair(r_matrix(kind, n, z2 / z3), n, 1, 2);
  if (kind == r_matrix_kind::xxz_multiplicative)
    return comm(r12, r23) + comm(r12, r13) + comm(r13, r23);
  const matrix<S> r32 = detail::embed_pair(r_matrix(kind, n, z3 / z2), n, 2, 1);
  return comm(r12, r23) + comm(r12, r13) + comm(r32, r13);
}

template <class S>
double cybe_residual(r_matrix_kind kind, std::size_t n, const S& z1, const S& z2,
                     const S& z3) {
  return cybe_combination(kind, n, z1, z2, z3).max_abs();
}

}  // namespace duality
