#include "doctest.h"

#include <vector>

#include "duality/spectral_models.hpp"
#include "test_util.hpp"

using namespace duality;
using test_util::fr;
using test_util::test_rng;

namespace {

matrix<rat> from_ints(std::size_t r, std::size_t c, std::initializer_list<long> vals) {
  matrix<rat> m(r, c);
  auto it = vals.begin();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rat(*it++);
  return m;
}

multi_pole_lax<rat> pinned_model(lax_kind k) {
  multi_pole_lax<rat> L;
  L.kind = k;
  L.twist = from_ints(2, 2, {1, 2, 3, 4});
  L.poles = {rat(2)};
  L.xi = from_ints(2, 1, {1, 0});
  L.eta = from_ints(1, 2, {5, 6});
  return L;
}

chain_site<rat> to_site(const rat& pole, std::vector<rat> xi, std::vector<rat> eta) {
  chain_site<rat> s;
  s.pole = pole;
  s.xi = std::move(xi);
  s.eta = std::move(eta);
  return s;
}

chain_site<cplx> site_to_cplx(const chain_site<rat>& s) {
  chain_site<cplx> out;
  out.pole = s.pole.to_cplx();
  for (const auto& v : s.xi) out.xi.push_back(v.to_cplx());
  for (const auto& v : s.eta) out.eta.push_back(v.to_cplx());
  return out;
}

}  // namespace

TEST_CASE("evaluate applies the kind-specific pole weights and twist") {
  const rat z(3);
  CHECK(evaluate(pinned_model(lax_kind::rational_gaudin), z) ==
        from_ints(2, 2, {6, 8, 3, 4}));
  CHECK(evaluate(pinned_model(lax_kind::trig_gaudin_reduced), z) ==
        from_ints(2, 2, {11, 14, 3, 4}));
  CHECK(evaluate(pinned_model(lax_kind::xxx_chain), z) ==
        from_ints(2, 2, {6, 8, 18, 22}));
  CHECK(evaluate(pinned_model(lax_kind::xxz_chain), z) ==
        from_ints(2, 2, {11, 14, 33, 40}));

  CHECK(residue_at(pinned_model(lax_kind::rational_gaudin), 0) ==
        from_ints(2, 2, {5, 6, 0, 0}));
  CHECK(residue_at(pinned_model(lax_kind::trig_gaudin_reduced), 0) ==
        from_ints(2, 2, {10, 12, 0, 0}));
  CHECK(residue_at(pinned_model(lax_kind::xxx_chain), 0) ==
        from_ints(2, 2, {5, 6, 15, 18}));
  CHECK(residue_at(pinned_model(lax_kind::xxz_chain), 0) ==
        from_ints(2, 2, {10, 12, 30, 36}));

  CHECK(constant_term(pinned_model(lax_kind::xxx_chain)) ==
        from_ints(2, 2, {1, 2, 3, 4}));
  CHECK_THROWS_AS(evaluate(pinned_model(lax_kind::rational_gaudin), rat(2)),
                  domain_violation);
}

TEST_CASE("model validation rejects malformed data") {
  auto L = pinned_model(lax_kind::rational_gaudin);
  L.poles = {rat(2), rat(2)};
  L.xi = from_ints(2, 2, {1, 0, 0, 1});
  L.eta = from_ints(2, 2, {5, 6, 7, 8});
  CHECK_THROWS_AS(validate_lax(L), domain_violation);

  auto Z = pinned_model(lax_kind::trig_gaudin_reduced);
  Z.poles = {rat(0)};
  CHECK_THROWS_AS(validate_lax(Z), domain_violation);
  Z.kind = lax_kind::rational_gaudin;  // zero pole is fine when unweighted
  CHECK_NOTHROW(validate_lax(Z));

  auto B = pinned_model(lax_kind::rational_gaudin);
  B.eta = from_ints(2, 2, {5, 6, 7, 8});
  CHECK_THROWS_AS(validate_lax(B), domain_violation);

  CHECK(lax_kind_from_name("xxz_chain") == lax_kind::xxz_chain);
  CHECK(lax_kind_name(lax_kind::trig_gaudin_reduced) ==
        std::string("trig_gaudin_reduced"));
  CHECK_THROWS_AS(lax_kind_from_name("nope"), domain_violation);
}

TEST_CASE("gauge lemma: recursive and closed forms agree and diagonalize") {
  test_rng rng(2026);
  const std::size_t n = 5, m = 3;
  const std::vector<rat> lambda = rng.distinct(n, false);
  const matrix<rat> xi = rng.mat(n, m);
  const matrix<rat> eta = rng.mat(m, n);

  const matrix<rat> full = xi * eta;
  matrix<rat> sbar(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) sbar(i, j) = full(i, j);

  const matrix<rat> rec = gauge_matrix_recursive(lambda, sbar);
  const matrix<rat> closed = gauge_matrix_closed(lambda, xi, eta);
  CHECK(rec == closed);
  const matrix<rat> g = gauge_matrix(lambda, xi, eta);
  CHECK(g == rec);

  // Unitriangular with the strictly upper part untouched.
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(g(i, i) == rat(1));
    for (std::size_t j = i + 1; j < n; ++j) CHECK(g(i, j).is_zero());
  }

  // g^{-1} (Lambda + Sbar) g = Lambda, exactly.
  const matrix<rat> lam = matrix<rat>::diagonal(lambda);
  CHECK(g.inverse() * (lam + sbar) * g == lam);

  // Degenerate twist eigenvalues are rejected.
  std::vector<rat> bad = lambda;
  bad[1] = bad[0];
  CHECK_THROWS_AS(gauge_matrix_recursive(bad, sbar), domain_violation);

  // A non-strictly-lower Sbar is rejected.
  matrix<rat> notlower = sbar;
  notlower(0, 1) = rat(1);
  CHECK_THROWS_AS(gauge_matrix_recursive(lambda, notlower), domain_violation);
}

TEST_CASE("trig Gaudin reduction conjugates the raw form exactly") {
  test_rng rng(77);
  const std::size_t n = 4, m = 3;
  trig_gaudin_raw<rat> raw;
  raw.lambda = rng.distinct(n, false);
  raw.poles = rng.distinct(m, true);
  raw.xi = rng.mat(n, m);
  raw.eta = rng.mat(m, n);

  const gauge_reduction<rat> red = trig_gaudin_reduce(raw);
  CHECK(red.model.kind == lax_kind::trig_gaudin_reduced);
  CHECK(red.model.twist == matrix<rat>::diagonal(raw.lambda));

  const matrix<rat> gi = red.gauge.inverse();
  for (int s = 0; s < 3; ++s) {
    rat z = rng.next();
    bool hits = false;
    for (const auto& p : raw.poles)
      if (z == p) hits = true;
    if (hits) {
      --s;
      continue;
    }
    CHECK(gi * evaluate_raw(raw, z) * red.gauge == evaluate(red.model, z));
  }

  // Conjugated residues are rank one.
  for (std::size_t k = 0; k < m; ++k)
    CHECK(core_residue(red.model, k).rank() == 1);
}

TEST_CASE("XXX monodromy sum form equals the ordered product") {
  test_rng rng(404);
  const std::size_t n = 3, m = 4;
  const matrix<rat> twist = rng.mat(n, n);
  std::vector<chain_site<rat>> sites;
  const std::vector<rat> poles = rng.distinct(m, false);
  for (std::size_t k = 0; k < m; ++k) {
    std::vector<rat> xi(n), eta(n);
    for (std::size_t i = 0; i < n; ++i) {
      xi[i] = rng.next();
      eta[i] = rng.next();
    }
    sites.push_back(to_site(poles[k], xi, eta));
  }

  const multi_pole_lax<rat> model = xxx_monodromy(twist, sites);
  CHECK(model.kind == lax_kind::xxx_chain);
  CHECK(model.twist == twist);

  for (int s = 0; s < 3; ++s) {
    rat z = rng.next();
    bool hits = false;
    for (const auto& p : poles)
      if (z == p) hits = true;
    if (hits) {
      --s;
      continue;
    }
    CHECK(evaluate(model, z) == monodromy_product(twist, sites, lax_kind::xxx_chain, z));
  }
}

TEST_CASE("XXZ monodromy gauge removes the triangular constant part") {
  test_rng rng(505);
  const std::size_t n = 3, m = 3;
  const std::vector<rat> vdiag = rng.distinct(n, true);
  const matrix<rat> twist = matrix<rat>::diagonal(vdiag);
  std::vector<chain_site<rat>> sites;
  const std::vector<rat> poles = rng.distinct(m, true);
  for (std::size_t k = 0; k < m; ++k) {
    std::vector<rat> xi(n), eta(n);
    for (std::size_t i = 0; i < n; ++i) {
      xi[i] = rng.next();
      eta[i] = rng.next();
    }
    sites.push_back(to_site(poles[k], xi, eta));
  }

  const gauged_monodromy<rat> gm = xxz_monodromy(twist, sites);
  CHECK(gm.model.kind == lax_kind::xxz_chain);
  CHECK(gm.model.twist == twist);
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(gm.gauge(i, i) == rat(1));
    for (std::size_t j = i + 1; j < n; ++j) CHECK(gm.gauge(i, j).is_zero());
  }

  const matrix<rat> gi = gm.gauge.inverse();
  for (int s = 0; s < 3; ++s) {
    rat z = rng.next();
    bool hits = z.is_zero();
    for (const auto& p : poles)
      if (z == p) hits = true;
    if (hits) {
      --s;
      continue;
    }
    CHECK(gi * monodromy_product(twist, sites, lax_kind::xxz_chain, z) * gm.gauge ==
          evaluate(gm.model, z));
  }

  // Float backend reproduces the same identity to tolerance.
  matrix<cplx> twist_c = to_cplx_matrix(twist);
  std::vector<chain_site<cplx>> sites_c;
  for (const auto& s : sites) sites_c.push_back(site_to_cplx(s));
  const gauged_monodromy<cplx> gmc = xxz_monodromy(twist_c, sites_c);
  const matrix<cplx> gic = gmc.gauge.inverse();
  const cplx zc(0.375, 0.25);
  CHECK(rel_distance(gic * monodromy_product(twist_c, sites_c, lax_kind::xxz_chain, zc) *
                         gmc.gauge,
                     evaluate(gmc.model, zc)) < 1e-9);
}

TEST_CASE("monodromy validation rejects malformed chains") {
  std::vector<chain_site<rat>> sites;
  sites.push_back(to_site(rat(1), {rat(1), rat(0)}, {rat(0), rat(1)}));
  sites.push_back(to_site(rat(1), {rat(1), rat(0)}, {rat(0), rat(1)}));
  const matrix<rat> twist = matrix<rat>::identity(2);
  CHECK_THROWS_AS(xxx_monodromy(twist, sites), domain_violation);

  sites[1].pole = rat(0);
  CHECK_THROWS_AS(xxz_monodromy(twist, sites), domain_violation);  // zero pole

  sites[1].pole = rat(2);
  CHECK_THROWS_AS(xxz_monodromy(twist, sites), domain_violation);  // equal twist diag

  const matrix<rat> good = matrix<rat>::diagonal({rat(1), rat(2)});
  CHECK_NOTHROW(xxz_monodromy(good, sites));
  CHECK_THROWS_AS(xxz_monodromy(from_ints(2, 2, {1, 1, 0, 2}), sites),
                  domain_violation);  // non-diagonal twist

  std::vector<chain_site<rat>> none;
  CHECK_THROWS_AS(xxx_monodromy(twist, none), domain_violation);
}

TEST_CASE("r-matrix entries are pinned at a sample argument") {
  const matrix<rat> rx = r_matrix(r_matrix_kind::xxz_multiplicative, 2, rat(3));
  CHECK(rx(0, 0) == rat(2));
  CHECK(rx(3, 3) == rat(2));
  CHECK(rx(1, 2) == rat(3));
  CHECK(rx(2, 1) == rat(1));
  CHECK(rx(0, 1).is_zero());
  CHECK(rx(1, 1).is_zero());

  const matrix<rat> rt = r_matrix(r_matrix_kind::twisted, 2, rat(3));
  CHECK(rt(0, 0) == fr(1, 2));
  CHECK(rt(1, 2) == fr(1, 2));
  CHECK(rt(2, 1) == fr(3, 2));

  CHECK_THROWS_AS(r_matrix(r_matrix_kind::twisted, 2, rat(1)), domain_violation);
}

TEST_CASE("Yang-Baxter residual vanishes exactly for both r-matrix kinds") {
  const rat z1(2), z2 = fr(3, 2), z3 = fr(-5, 7);
  for (std::size_t n : {std::size_t(2), std::size_t(3)}) {
    CHECK(cybe_residual(r_matrix_kind::xxz_multiplicative, n, z1, z2, z3) == 0.0);
    CHECK(cybe_residual(r_matrix_kind::twisted, n, z1, z2, z3) == 0.0);
  }

  // Gaussian-rational arguments.
  const rat w1(bigq(1), bigq(1, 2)), w2(bigq(2), bigq(-1)), w3 = fr(3, 5);
  CHECK(cybe_residual(r_matrix_kind::xxz_multiplicative, 2, w1, w2, w3) == 0.0);
  CHECK(cybe_residual(r_matrix_kind::twisted, 2, w1, w2, w3) == 0.0);

  // The skew combination does NOT close for the twisted r-matrix: the third
  // term genuinely needs its reversed-slot form.
  auto comm = [](const matrix<rat>& a, const matrix<rat>& b) { return a * b - b * a; };
  const std::size_t n = 2;
  const matrix<rat> r12 =
      detail::embed_pair(r_matrix(r_matrix_kind::twisted, n, z1 / z2), n, 0, 1);
  const matrix<rat> r13 =
      detail::embed_pair(r_matrix(r_matrix_kind::twisted, n, z1 / z3), n, 0, 2);
  const matrix<rat> r23 =
      detail::embed_pair(r_matrix(r_matrix_kind::twisted, n, z2 / z3), n, 1, 2);
  CHECK((comm(r12, r23) + comm(r12, r13) + comm(r13, r23)).max_abs() > 0.0);
}
