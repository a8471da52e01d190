#include "doctest.h"

#include <cmath>
#include <string>
#include <vector>

#include "duality/flows.hpp"
#include "test_util.hpp"

using namespace duality;
using test_util::fr;
using test_util::test_rng;

namespace {

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

// Deterministic generic complex entries.
cplx gen_entry(std::size_t a, std::size_t i, std::size_t j) {
  const double re = double((a * 31 + i * 7 + j) % 13) / 6.0 - 1.0;
  const double im = double((a * 17 + i * 5 + j * 3) % 11) / 5.0 - 1.0;
  return {re, im};
}

pole_connection<cplx> generic_gaudin(std::size_t n, std::size_t m) {
  pole_connection<cplx> conn;
  conn.base = matrix<cplx>(n, n);
  for (std::size_t i = 0; i < n; ++i) conn.base(i, i) = cplx(0.4 * i + 0.3, 0.1 * i);
  for (std::size_t a = 0; a < m; ++a)
    conn.poles.push_back(cplx(1.0 + 0.8 * a, 0.3 - 0.2 * a));
  conn.residues.assign(m, matrix<cplx>(n, n));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) conn.residues[a](i, j) = gen_entry(a, i, j);
  validate_connection(conn);
  return conn;
}

}  // namespace

TEST_CASE("isomonodromic residual vanishes exactly for the canonical field") {
  test_rng rng(61);
  pole_connection<rat> conn;
  conn.base = rng.mat(3, 3);
  conn.poles = rng.distinct(3, false);
  conn.residues = {rng.mat(3, 3), rng.mat(3, 3), rng.mat(3, 3)};

  for (std::size_t a : {std::size_t(0), std::size_t(1)}) {
    for (const rat& kappa : {rat(1), fr(5, 7)}) {
      for (int s = 0; s < 2; ++s) {
        rat z = rng.next();
        bool hits = false;
        for (const auto& p : conn.poles)
          if (z == p) hits = true;
        if (hits) {
          --s;
          continue;
        }
        CHECK(schlesinger_residual_matrix(conn, a, z, kappa).is_zero());
      }
    }
  }
}

TEST_CASE("isomonodromic residual responds linearly to field perturbations") {
  test_rng rng(67);
  pole_connection<rat> conn;
  conn.base = rng.mat(2, 2);
  conn.poles = rng.distinct(2, false);
  conn.residues = {rng.mat(2, 2), rng.mat(2, 2)};

  const std::size_t a = 0, c = 1;
  const rat eps = fr(3, 11), kappa = fr(2, 5);
  std::vector<matrix<rat>> vf = schlesinger_vector_field(conn, a);
  vf[c](0, 1) += eps;

  const rat z = fr(9, 2);  // off the pole grid
  for (const auto& p : conn.poles) REQUIRE(z != p);
  const matrix<rat> res = schlesinger_residual_matrix(conn, a, z, kappa, &vf);
  matrix<rat> expected(2, 2);
  expected(0, 1) = kappa * eps / (z - conn.poles[c]);
  CHECK(res == expected);

  std::vector<matrix<rat>> bad = vf;
  bad.pop_back();
  CHECK_THROWS_AS(schlesinger_residual_matrix(conn, a, z, kappa, &bad),
                  domain_violation);
  CHECK_THROWS_AS(schlesinger_vector_field(conn, 5), domain_violation);
}

TEST_CASE("many-body flows preserve the Lax spectrum") {
  for (model_kind k : {model_kind::rational_cm, model_kind::trig_cms,
                       model_kind::rational_rs, model_kind::trig_rs}) {
    const std::string kn = kind_name(k);
    CAPTURE(kn);
    const phase_point<cplx> x = natural_point(k);
    const flow_result r = evolve_manybody(k, x, 0.5, 200);
    CHECK(r.max_drift < 1e-7);
    CHECK(r.steps == 200);
    CHECK_NOTHROW(validate_phase_point(k, r.end));
    // The flow actually moves the point.
    double moved = 0.0;
    for (std::size_t i = 0; i < x.q.size(); ++i)
      moved = std::max(moved, std::abs(r.end.q[i] - x.q[i]));
    CHECK(moved > 1e-3);
  }
}

TEST_CASE("integrator drift scales at fourth order") {
  for (model_kind k : {model_kind::rational_cm, model_kind::trig_rs}) {
    const std::string kn = kind_name(k);
    CAPTURE(kn);
    // Step counts chosen inside the asymptotic regime: halving the step size
    // must shrink the invariant drift by ~2^4 while staying above roundoff.
    const double ratio = flow_convergence_ratio(k, natural_point(k), 1.0, 160);
    CHECK(ratio > 8.0);
    CHECK(ratio < 32.0);
  }
}

TEST_CASE("head-on trajectories trip the collision monitor") {
  phase_point<cplx> x;
  x.q = {cplx(-0.5, 0.0), cplx(0.5, 0.0)};
  x.p = {cplx(1.0, 0.0), cplx(-1.0, 0.0)};
  x.nu = cplx(0.3, 0.0);
  CHECK_THROWS_AS(evolve_manybody(model_kind::rational_cm, x, 2.0, 2000),
                  numeric_failure);
  CHECK_THROWS_AS(evolve_manybody(model_kind::rational_cm, x, 1.0, 0),
                  domain_violation);
}

TEST_CASE("gaudin flow conserves casimirs, hamiltonians, and the curve") {
  const pole_connection<cplx> conn = generic_gaudin(3, 3);
  const gaudin_flow_result r = evolve_gaudin(conn, 0, 0.4, 160);
  CHECK(r.casimir_drift < 1e-7);
  CHECK(r.hamiltonian_drift < 1e-7);
  CHECK(r.spectral_drift < 1e-7);
  // The flow is nontrivial.
  double moved = 0.0;
  for (std::size_t j = 0; j < conn.residues.size(); ++j)
    moved = std::max(moved, rel_distance(r.end.residues[j], conn.residues[j]));
  CHECK(moved > 1e-3);
  CHECK_THROWS_AS(evolve_gaudin(conn, 7, 0.1, 10), domain_violation);
}

TEST_CASE("gaudin flows generated by different poles commute") {
  const pole_connection<cplx> conn = generic_gaudin(3, 3);
  CHECK(gaudin_flow_commutation(conn, 0, 1, 0.3, 120) < 1e-7);
}
