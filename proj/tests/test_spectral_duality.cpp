#include "doctest.h"

#include <cmath>
#include <string>
#include <vector>

#include "duality/spectral_duality.hpp"
#include "test_util.hpp"

using namespace duality;
using test_util::fr;
using test_util::test_rng;

namespace {

multi_pole_lax<rat> random_model(lax_kind kind, std::size_t n, std::size_t m,
                                 test_rng& rng, bool zero_twist_entry = false) {
  multi_pole_lax<rat> L;
  L.kind = kind;
  std::vector<rat> tw = rng.distinct(n, false);
  if (zero_twist_entry) tw[0] = rat(0);
  bool dual_weighted = pole_weighted(dual_lax_kind(kind));
  if (dual_weighted)
    for (auto& t : tw)
      if (t.is_zero()) t = fr(13, 3);
  // keep the entries distinct after any patching
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (tw[i] == tw[j]) tw[j] += fr(1, 11);
  L.twist = matrix<rat>::diagonal(tw);
  L.poles = rng.distinct(m, pole_weighted(kind));
  L.xi = rng.mat(n, m);
  L.eta = rng.mat(m, n);
  validate_lax(L);
  return L;
}

rat sample_off(const std::vector<rat>& avoid, test_rng& rng) {
  for (;;) {
    rat z = rng.next();
    bool ok = true;
    for (const auto& p : avoid)
      if (z == p) ok = false;
    if (ok) return z;
  }
}

// Generic complex N=3 point in additive coordinates (matches the duality-map
// tests).
const std::vector<cplx> kQ{{0.0, 0.03}, {0.9, -0.02}, {2.1, 0.05}};
const std::vector<cplx> kP{{0.6, -0.01}, {-0.4, 0.04}, {1.2, 0.02}};
const cplx kNu{0.8, 0.05};

std::vector<cplx> exp_vec(const std::vector<cplx>& v) {
  std::vector<cplx> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::exp(v[i]);
  return out;
}

phase_point<cplx> natural_point(model_kind k) {
  phase_point<cplx> x;
  x.q = position_multiplicative(k) ? exp_vec(kQ) : kQ;
  x.p = momentum_multiplicative(k) ? exp_vec(kP) : kP;
  x.nu = coupling_multiplicative(k) ? std::exp(-kNu) : kNu;
  return x;
}

phase_point<rat> exact_point(model_kind k) {
  phase_point<rat> x;
  switch (k) {
    case model_kind::rational_cm:
      x.q = {rat(0), rat(1), rat(3)};
      x.p = {fr(1, 2), rat(-2), fr(5, 3)};
      x.nu = fr(2, 3);
      break;
    case model_kind::trig_cms:
      x.q = {rat(1), rat(2), rat(-3)};
      x.p = {fr(1, 3), rat(2), fr(-1, 2)};
      x.nu = fr(3, 4);
      break;
    case model_kind::trig_rs:
      x.q = {rat(1), rat(2), fr(-1, 2)};
      x.p = {rat(2), rat(-1), fr(1, 2)};
      x.nu = fr(1, 3);  // the multiplicative coupling t
      break;
    default:
      throw domain_violation("exact_point: unsupported kind");
  }
  validate_phase_point(k, x);
  return x;
}

}  // namespace

TEST_CASE("one-site spectral curve has the pinned cleared form") {
  // L(z) = t + xi*eta/(z - z1):
  // P(lambda, z) = (lambda - t)(z - z1) - xi*eta
  multi_pole_lax<rat> L;
  L.kind = lax_kind::rational_gaudin;
  L.twist = matrix<rat>(1, 1);
  L.twist(0, 0) = rat(2);
  L.poles = {rat(3)};
  L.xi = matrix<rat>(1, 1);
  L.xi(0, 0) = rat(5);
  L.eta = matrix<rat>(1, 1);
  L.eta(0, 0) = rat(7);

  const bivariate_poly<rat> p = spectral_poly(L);
  CHECK(p.lambda_degree() == 1);
  CHECK(p.z_degree() == 1);
  CHECK(p.coeff(1, 1) == rat(1));
  CHECK(p.coeff(1, 0) == rat(-3));
  CHECK(p.coeff(0, 1) == rat(-2));
  CHECK(p.coeff(0, 0) == rat(-29));  // t*z1 - xi*eta = 6 - 35
}

TEST_CASE("cleared curve matches the determinant at off-pole points") {
  test_rng rng(11);
  const multi_pole_lax<rat> L = random_model(lax_kind::xxz_chain, 3, 2, rng);
  const bivariate_poly<rat> p = spectral_poly(L);
  for (int s = 0; s < 2; ++s) {
    const rat z = sample_off(L.poles, rng);
    const rat lam = rng.next();
    matrix<rat> a = evaluate(L, z);
    for (std::size_t i = 0; i < a.rows(); ++i) a(i, i) -= lam;
    rat det = matrix<rat>(a).determinant();
    if (a.rows() % 2 == 1) det = -det;  // det(lam - L) = (-1)^n det(L - lam)
    for (const auto& zk : L.poles) det *= z - zk;
    CHECK(evaluate_curve(p, lam, z) == det);
  }
}

TEST_CASE("spectral dual transposes the curve for every model family") {
  test_rng rng(21);
  struct probe {
    lax_kind kind;
    std::size_t n, m;
    bool zero_twist;
  };
  const probe probes[] = {
      {lax_kind::rational_gaudin, 3, 2, true},  // zero twist eigenvalue is fine
      {lax_kind::xxx_chain, 2, 3, false},
      {lax_kind::trig_gaudin_reduced, 3, 2, true},  // dual has unweighted poles
      {lax_kind::xxz_chain, 2, 2, false},
  };
  for (const auto& pr : probes) {
    const std::string kn = lax_kind_name(pr.kind);
    CAPTURE(kn);
    const multi_pole_lax<rat> L = random_model(pr.kind, pr.n, pr.m, rng, pr.zero_twist);
    const multi_pole_lax<rat> D = spectral_dual(L);
    CHECK(D.kind == dual_lax_kind(pr.kind));
    CHECK(D.size() == pr.m);
    CHECK(D.n_poles() == pr.n);
    CHECK(curves_transpose_equal(spectral_poly(L), spectral_poly(D)));
    CHECK(curves_transpose_distance(spectral_poly(L), spectral_poly(D)) == 0.0);

    // The swap is an exact involution.
    const multi_pole_lax<rat> B = spectral_dual(D);
    CHECK(B.kind == L.kind);
    CHECK(B.twist == L.twist);
    CHECK(B.xi == L.xi);
    CHECK(B.eta == L.eta);
    CHECK(B.poles == L.poles);
  }
}

TEST_CASE("spectral dual validates its twist") {
  test_rng rng(31);
  multi_pole_lax<rat> L = random_model(lax_kind::rational_gaudin, 2, 2, rng);
  L.twist(0, 1) = rat(1);
  CHECK_THROWS_AS(spectral_dual(L), domain_violation);  // non-diagonal twist

  multi_pole_lax<rat> R = random_model(lax_kind::rational_gaudin, 2, 2, rng);
  R.twist(1, 1) = R.twist(0, 0);
  CHECK_THROWS_AS(spectral_dual(R), domain_violation);  // repeated eigenvalue

  multi_pole_lax<rat> X = random_model(lax_kind::xxx_chain, 2, 2, rng);
  X.twist(0, 0) = rat(0);  // dual kind weights its poles
  CHECK_THROWS_AS(spectral_dual(X), domain_violation);
}

TEST_CASE("fictitious Lax has a z-independent characteristic polynomial") {
  test_rng rng(41);
  for (model_kind k :
       {model_kind::rational_cm, model_kind::trig_cms, model_kind::trig_rs}) {
    const std::string kn = kind_name(k);
    CAPTURE(kn);
    const phase_point<rat> x = exact_point(k);
    const multi_pole_lax<rat> raw = fictitious_lax_raw(k, x);
    CHECK(raw.kind == lax_kind::rational_gaudin);
    CHECK(raw.twist == lax(k, x));
    const std::vector<rat> base = char_poly(raw.twist);
    for (int s = 0; s < 3; ++s) {
      const rat z = sample_off(raw.poles, rng);
      CHECK(char_poly(evaluate(raw, z)) == base);
    }
    // Consequently the cleared curve factorizes:
    // P(lambda, z) = det(lambda - L) prod_a (z - q_a).
    const bivariate_poly<rat> p = spectral_poly(raw);
    const std::vector<rat> clear = poly_from_roots(raw.poles);
    const std::size_t n = raw.size();
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t j = 0; j <= n; ++j)
        CHECK(p.coeff(i, j) == base[n - i] * clear[j]);
    // Residues are rank one by construction.
    for (std::size_t a = 0; a < raw.n_poles(); ++a)
      CHECK(core_residue(raw, a).rank() <= 1);
  }
  phase_point<rat> bad;
  bad.q = {rat(1), rat(2)};
  bad.p = {rat(1), rat(1)};
  bad.nu = fr(1, 5);
  CHECK_THROWS_AS(fictitious_lax_raw(model_kind::rational_rs, bad), domain_violation);
}

TEST_CASE("conjugated fictitious model matches the raw form under the gauge") {
  for (model_kind k :
       {model_kind::rational_cm, model_kind::trig_cms, model_kind::trig_rs}) {
    const std::string kn = kind_name(k);
    CAPTURE(kn);
    const phase_point<cplx> x = natural_point(k);
    const fictitious_conjugated f = fictitious_lax(k, x);
    const multi_pole_lax<cplx> raw = fictitious_lax_raw(k, x);
    const matrix<cplx> ip = f.dual.psi.inverse();
    for (const cplx z : {cplx(2.6, 1.4), cplx(-1.8, 0.9)}) {
      const matrix<cplx> lhs = ip * evaluate(raw, z) * f.dual.psi;
      CHECK(rel_distance(lhs, evaluate(f.model, z)) < 1e-9);
    }
    // The conjugated twist is the diagonal of dual positions.
    CHECK(rel_distance(f.model.twist, matrix<cplx>::diagonal(f.dual.dual.q)) == 0.0);
  }
}

TEST_CASE("position-momentum duality factors through the spectral dual") {
  struct probe {
    model_kind kind;
    lax_kind conjugated;
    lax_kind dual_model;
  };
  const probe probes[] = {
      {model_kind::rational_cm, lax_kind::rational_gaudin, lax_kind::rational_gaudin},
      {model_kind::trig_cms, lax_kind::trig_gaudin_reduced, lax_kind::xxx_chain},
      {model_kind::trig_rs, lax_kind::xxz_chain, lax_kind::xxz_chain},
  };
  for (const auto& pr : probes) {
    const std::string kn = kind_name(pr.kind);
    CAPTURE(kn);
    const phase_point<cplx> x = natural_point(pr.kind);
    const pq_spectral_result r = pq_via_spectral(pr.kind, x);
    CHECK(r.conjugated.kind == pr.conjugated);
    CHECK(r.dual_model.kind == pr.dual_model);
    REQUIRE(r.sample_residuals.size() == 3);
    for (double res : r.sample_residuals) CHECK(res < 1e-8);

    // The conjugated model also satisfies the curve-level duality on floats.
    CHECK(curves_transpose_distance(spectral_poly(r.conjugated),
                                    spectral_poly(r.dual_model)) < 1e-9);
  }
}

TEST_CASE("pipeline reports failure through the tolerance gate") {
  const phase_point<cplx> x = natural_point(model_kind::rational_cm);
  CHECK_THROWS_AS(pq_via_spectral(model_kind::rational_cm, x, 1e-18), numeric_failure);
}
