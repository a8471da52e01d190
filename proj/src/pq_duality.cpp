#include "duality/pq_duality.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "duality/eig.hpp"

namespace duality {

namespace {

constexpr double kTiny = 1e-12;
const double kPi = std::acos(-1.0);

// Diagonal gauge G = diag(g), g_0 = 1, such that G X G^{-1} matches the
// target on its first row: g_j = X_{0j} / T_{0j}. Returns the gauged X and
// stores G^{-1} applied to psi.
struct gauge_fix_result {
  matrix<cplx> gauged;
  std::vector<cplx> g;
};

gauge_fix_result first_row_gauge(const matrix<cplx>& x, const matrix<cplx>& target) {
  const std::size_t n = x.rows();
  std::vector<cplx> g(n);
  g[0] = cplx(1.0, 0.0);
  const double scale = std::max(target.max_abs(), 1.0);
  for (std::size_t j = 1; j < n; ++j) {
    if (std::abs(target(0, j)) < kTiny * scale)
      throw numeric_failure("dualize: first-row gauge pivot below tolerance");
    g[j] = x(0, j) / target(0, j);
    if (std::abs(g[j]) < kTiny)
      throw numeric_failure("dualize: vanishing gauge factor");
  }
  gauge_fix_result out;
  out.gauged = matrix<cplx>(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out.gauged(i, j) = g[i] * x(i, j) / g[j];
  out.g = std::move(g);
  return out;
}

matrix<cplx> apply_inverse_diag(const matrix<cplx>& psi, const std::vector<cplx>& g) {
  matrix<cplx> out = psi;
  for (std::size_t i = 0; i < psi.rows(); ++i)
    for (std::size_t j = 0; j < psi.cols(); ++j) out(i, j) /= g[j];
  return out;
}

// Dual of the rational CM model: spectrum of L gives the dual positions, the
// conjugated position matrix gives the dual Lax with flipped coupling. The
// eigenvector gauge is fixed by unit column sums.
duality_map_result dualize_rational_cm(const phase_point<cplx>& x) {
  const matrix<cplx> L = lax(model_kind::rational_cm, x);
  const eig_result eg = eig_sorted(L);
  const std::size_t n = x.q.size();

  std::vector<cplx> colsum(n, 0.0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) colsum[j] += eg.vectors(i, j);
  matrix<cplx> psi = eg.vectors;
  for (std::size_t j = 0; j < n; ++j) {
    if (std::abs(colsum[j]) < kTiny)
      throw numeric_failure("dualize: eigenvector column sum below tolerance");
    for (std::size_t i = 0; i < n; ++i) psi(i, j) /= colsum[j];
  }

  const matrix<cplx> lt = psi.inverse() * matrix<cplx>::diagonal(x.q) * psi;
  duality_map_result r;
  r.source_kind = model_kind::rational_cm;
  r.dual_kind = model_kind::rational_cm;
  r.dual = {eg.values, lt.diag(), -x.nu};
  r.psi = psi;
  r.residual = rel_distance(lt, lax(model_kind::rational_cm, r.dual));
  return r;
}

// Shared body of the three maps that read the dual point off the conjugated
// position matrix and fix the remaining diagonal gauge on the first row.
duality_map_result dualize_position_matrix(
    model_kind source, model_kind dual_kind, const phase_point<cplx>& x,
    const std::vector<cplx>& position_diag, cplx dual_coupling,
    const std::function<std::vector<cplx>(const std::vector<cplx>&)>& dual_weights,
    bool momenta_from_diag) {
  const matrix<cplx> L = lax(source, x);
  const eig_result eg = eig_sorted(L);
  const std::size_t n = x.q.size();

  if (position_multiplicative(dual_kind)) {
    for (const cplx& v : eg.values)
      if (std::abs(v) < kTiny)
        throw numeric_failure("dualize: dual multiplicative position near zero");
  }

  const matrix<cplx> psi_inv = eg.vectors.inverse();
  const matrix<cplx> lt_raw =
      psi_inv * matrix<cplx>::diagonal(position_diag) * eg.vectors;

  phase_point<cplx> dual;
  dual.q = eg.values;
  dual.nu = dual_coupling;
  if (momenta_from_diag) {
    dual.p = lt_raw.diag();
  } else {
    const std::vector<cplx> weights = dual_weights(eg.values);
    dual.p.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(weights[j]) < kTiny)
        throw numeric_failure("dualize: dual weight product below tolerance");
      dual.p[j] = lt_raw(j, j) / weights[j];
    }
  }

  const matrix<cplx> target = lax(dual_kind, dual);
  const gauge_fix_result gf = first_row_gauge(lt_raw, target);

  duality_map_result r;
  r.source_kind = source;
  r.dual_kind = dual_kind;
  r.dual = std::move(dual);
  r.psi = apply_inverse_diag(eg.vectors, gf.g);
  r.residual = rel_distance(gf.gauged, target);
  return r;
}

}  // namespace

model_kind dual_kind_of(model_kind k) {
  switch (k) {
    case model_kind::rational_cm: return model_kind::rational_cm;
    case model_kind::trig_cms: return model_kind::rational_rs;
    case model_kind::rational_rs: return model_kind::trig_cms;
    case model_kind::trig_rs: return model_kind::trig_rs;
  }
  throw domain_violation("dual_kind_of: unknown model kind");
}

duality_map_result dualize(model_kind k, const phase_point<cplx>& x, double rtol) {
  validate_phase_point(k, x);
  duality_map_result r;
  switch (k) {
    case model_kind::rational_cm:
      r = dualize_rational_cm(x);
      break;
    case model_kind::trig_cms:
      // Eigenvalues of the CMS Lax are the additive rational RS positions;
      // dual momenta are the conjugated-diagonal over the RS b-products.
      r = dualize_position_matrix(
          k, model_kind::rational_rs, x, x.q, x.nu,
          [&x](const std::vector<cplx>& qt) { return rs_b_products(qt, x.nu); },
          false);
      break;
    case model_kind::rational_rs:
      // Eigenvalues of the rational RS Lax are the multiplicative CMS
      // positions; the conjugated additive position matrix has the dual
      // momenta on its diagonal.
      r = dualize_position_matrix(k, model_kind::trig_cms, x, x.q, x.nu, {}, true);
      break;
    case model_kind::trig_rs: {
      const cplx td = cplx(1.0, 0.0) / x.nu;
      r = dualize_position_matrix(
          k, model_kind::trig_rs, x, x.q, td,
          [td](const std::vector<cplx>& wt) { return rs_c_products(wt, td); },
          false);
      break;
    }
    default:
      throw domain_violation("dualize: unknown model kind");
  }
  if (r.residual > rtol)
    throw numeric_failure("dualize: reconstruction residual above tolerance");
  return r;
}

double involution_residual(model_kind k, const phase_point<cplx>& x, double rtol) {
  const duality_map_result first = dualize(k, x, rtol);
  const duality_map_result second = dualize(first.dual_kind, first.dual, rtol);
  if (second.dual_kind != k)
    throw numeric_failure("involution_residual: kind did not return to source");

  // Pair each original particle with the nearest unused round-trip position.
  // A lexicographic sort would mis-pair particles whose positions tie in one
  // component exactly: roundoff breaks the tie on the round-trip side in an
  // arbitrary order.
  const std::vector<cplx>& q0 = x.q;
  const std::vector<cplx>& p0 = x.p;
  const std::vector<cplx>& q2 = second.dual.q;
  const std::vector<cplx>& p2 = second.dual.p;
  const std::size_t n = q0.size();

  double scale = std::abs(x.nu);
  for (std::size_t i = 0; i < n; ++i)
    scale = std::max({scale, std::abs(q0[i]), std::abs(p0[i])});
  scale = std::max(scale, 1.0);

  double worst = std::abs(second.dual.nu - x.nu);
  std::vector<bool> used(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t best = n;
    double best_dist = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j]) continue;
      const double d = std::abs(q2[j] - q0[i]);
      if (best == n || d < best_dist) {
        best = j;
        best_dist = d;
      }
    }
    used[best] = true;
    worst = std::max({worst, best_dist, std::abs(p2[best] - p0[i])});
  }
  return worst / scale;
}

namespace {

// Additive (log) coordinates of the dual point, reordered to follow a base
// call: dual pairs are matched greedily to the base dual positions, and log
// branches are pinned to the base values. This keeps the finite-difference
// stencil on one smooth branch of the map.
struct additive_map {
  model_kind kind;
  cplx coupling_natural;
  bool has_base = false;
  std::vector<cplx> base_q;
  std::vector<cplx> base_p;

  static cplx branch_align(cplx v, const cplx& base) {
    const double two_pi = 2.0 * kPi;
    const double k = std::round((base.imag() - v.imag()) / two_pi);
    return v + cplx(0.0, two_pi * k);
  }

  std::vector<cplx> operator()(const std::vector<cplx>& s) {
    const std::size_t n = s.size() / 2;
    phase_point<cplx> x;
    x.q.resize(n);
    x.p.resize(n);
    x.nu = coupling_natural;
    for (std::size_t i = 0; i < n; ++i) {
      x.q[i] = position_multiplicative(kind) ? std::exp(s[i]) : s[i];
      x.p[i] = momentum_multiplicative(kind) ? std::exp(s[n + i]) : s[n + i];
    }
    const duality_map_result r =
        dualize(kind, x, std::numeric_limits<double>::infinity());
    const model_kind dk = r.dual_kind;
    std::vector<cplx> dq(n), dp(n);
    for (std::size_t i = 0; i < n; ++i) {
      dq[i] = position_multiplicative(dk) ? std::log(r.dual.q[i]) : r.dual.q[i];
      dp[i] = momentum_multiplicative(dk) ? std::log(r.dual.p[i]) : r.dual.p[i];
    }
    std::vector<cplx> out(2 * n);
    if (!has_base) {
      base_q = dq;
      base_p = dp;
      has_base = true;
      for (std::size_t i = 0; i < n; ++i) {
        out[i] = dq[i];
        out[n + i] = dp[i];
      }
      return out;
    }
    std::vector<bool> used(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t best = n;
      double bd = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < n; ++j) {
        if (used[j]) continue;
        const double d = std::abs(dq[j] - base_q[i]);
        if (d < bd) {
          bd = d;
          best = j;
        }
      }
      used[best] = true;
      out[i] = branch_align(dq[best], base_q[i]);
      out[n + i] = branch_align(dp[best], base_p[i]);
    }
    return out;
  }
};

}  // namespace

double anticanonical_residual(model_kind k, const phase_point<cplx>& x, double h) {
  validate_phase_point(k, x);
  const std::size_t n = x.q.size();
  additive_map f;
  f.kind = k;
  f.coupling_natural = x.nu;

  std::vector<cplx> s0(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    s0[i] = position_multiplicative(k) ? std::log(x.q[i]) : x.q[i];
    s0[n + i] = momentum_multiplicative(k) ? std::log(x.p[i]) : x.p[i];
  }
  f(s0);  // establishes the base ordering and branches

  matrix<cplx> jac(2 * n, 2 * n);
  for (std::size_t c = 0; c < 2 * n; ++c) {
    const double hp = h * std::max(1.0, std::abs(s0[c]));
    std::vector<cplx> sp = s0, sm = s0;
    sp[c] += hp;
    sm[c] -= hp;
    const std::vector<cplx> fp = f(sp);
    const std::vector<cplx> fm = f(sm);
    for (std::size_t r = 0; r < 2 * n; ++r)
      jac(r, c) = (fp[r] - fm[r]) / (2.0 * hp);
  }

  // Omega = [[0, -I], [I, 0]] in (q, p) block order.
  matrix<cplx> omega(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    omega(i, n + i) = cplx(-1.0, 0.0);
    omega(n + i, i) = cplx(1.0, 0.0);
  }
  const matrix<cplx> lhs = jac.transpose() * omega * jac;
  return distance(lhs, -omega);
}

}  // namespace duality
