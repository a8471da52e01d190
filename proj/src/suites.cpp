#include "duality/suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <optional>
#include <thread>
#include <utility>

#include "duality/cc_duality.hpp"
#include "duality/eig.hpp"
#include "duality/flows.hpp"
#include "duality/json_io.hpp"
#include "duality/pq_duality.hpp"
#include "duality/spectral_duality.hpp"

namespace duality {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct pending_check {
  std::string check_id;
  check_backend backend = check_backend::exact;
  std::function<check_row()> run;
};

// Registration-time context: trial counts, size caps, tolerance overrides,
// per-trial seeds, and the backend filter.
struct suite_ctx {
  const suite_config& cfg;
  std::vector<pending_check>& out;

  int trials(int fallback) const { return cfg.trials > 0 ? cfg.trials : fallback; }
  double tol(double fallback) const { return cfg.tol > 0.0 ? cfg.tol : fallback; }
  std::size_t n_hi(std::size_t fallback) const {
    if (cfg.n_max == 0) return fallback;
    return std::max<std::size_t>(2, std::min(fallback, cfg.n_max));
  }
  std::size_t m_hi(std::size_t fallback) const {
    if (cfg.m_max == 0) return fallback;
    return std::max<std::size_t>(1, std::min(fallback, cfg.m_max));
  }
  std::uint64_t trial_seed(const std::string& key, int trial) const {
    return fnv1a64(key + "#" + std::to_string(trial)) ^
           (cfg.seed * 0x9E3779B97F4A7C15ull + 0x2545F4914F6CDD1Dull);
  }
  bool want(check_backend b) const {
    return cfg.backend.empty() || cfg.backend == backend_name(b);
  }
  void add(std::string id, check_backend b, std::function<check_row()> run) {
    if (!want(b)) return;
    out.push_back({std::move(id), b, std::move(run)});
  }
};

std::size_t cycle(std::size_t lo, std::size_t hi, int t) {
  if (hi <= lo) return lo;
  return lo + static_cast<std::size_t>(t) % (hi - lo + 1);
}

check_row start_row(const std::string& id, check_backend b, std::string digest) {
  check_row row;
  row.check_id = id;
  row.backend = b;
  row.instance_digest = std::move(digest);
  return row;
}

std::string manybody_digest(model_kind k, const phase_point<rat>& x) {
  return content_digest(canonical_dump(manybody_to_json(k, x)));
}

pole_connection<cplx> to_cplx_connection(const pole_connection<rat>& c) {
  pole_connection<cplx> out;
  out.base = to_cplx_matrix(c.base);
  out.poles = to_cplx_vector(c.poles);
  out.residues.reserve(c.residues.size());
  for (const auto& r : c.residues) out.residues.push_back(to_cplx_matrix(r));
  return out;
}

// ---------------------------------------------------------------------------
// Suite: moment-maps (exact). The moment-map residual matrix is identically
// zero on every valid phase point of every kind.
void build_moment_maps(suite_ctx& ctx) {
  const int trials = ctx.trials(50);
  const std::size_t hi = ctx.n_hi(6);
  for (const model_kind k : {model_kind::rational_cm, model_kind::trig_cms,
                             model_kind::rational_rs, model_kind::trig_rs}) {
    const std::string base = std::string("moment-maps/") + kind_name(k);
    for (int t = 0; t < trials; ++t) {
      const std::size_t n = cycle(2, hi, t);
      const std::string id = base + "/n" + std::to_string(n);
      const std::uint64_t seed = ctx.trial_seed(base, t);
      ctx.add(id, check_backend::exact, [=]() {
        instance_rng rng(seed);
        const phase_point<rat> x = generate_manybody(k, n, rng);
        check_row row = start_row(id, check_backend::exact, manybody_digest(k, x));
        const matrix<rat> r = moment_map(k, x);
        row.residual = r.max_abs();
        row.pass = r.is_zero();
        return row;
      });
    }
  }
}

// ---------------------------------------------------------------------------
// Suite: pq-duality (float). Per instance: the reconstructed dual Lax matches
// the canonical dual Lax; applying the map twice returns the starting point;
// the dual positions are the sorted spectrum of the source Lax.
void build_pq_duality(suite_ctx& ctx) {
  const int trials = ctx.trials(20);
  const std::size_t hi = ctx.n_hi(4);
  for (const model_kind k : {model_kind::rational_cm, model_kind::trig_cms,
                             model_kind::rational_rs, model_kind::trig_rs}) {
    const std::string base = std::string("pq-duality/") + kind_name(k);
    for (int t = 0; t < trials; ++t) {
      const std::size_t n = cycle(2, hi, t);
      const std::uint64_t seed = ctx.trial_seed(base, t);
      const double lax_tol = ctx.tol(1e-8);
      const double inv_tol = ctx.tol(1e-7);
      const double pos_tol = ctx.tol(1e-9);

      ctx.add(base + "/lax", check_backend::floating, [=]() {
        instance_rng rng(seed);
        const phase_point<rat> xr = generate_manybody(k, n, rng);
        check_row row =
            start_row(base + "/lax", check_backend::floating, manybody_digest(k, xr));
        row.residual = dualize(k, to_cplx_point(xr), kInf).residual;
        row.tolerance = lax_tol;
        row.pass = row.residual <= lax_tol;
        return row;
      });
      ctx.add(base + "/involution", check_backend::floating, [=]() {
        instance_rng rng(seed);
        const phase_point<rat> xr = generate_manybody(k, n, rng);
        check_row row = start_row(base + "/involution", check_backend::floating,
                                  manybody_digest(k, xr));
        row.residual = involution_residual(k, to_cplx_point(xr), kInf);
        row.tolerance = inv_tol;
        row.pass = row.residual <= inv_tol;
        return row;
      });
      ctx.add(base + "/positions", check_backend::floating, [=]() {
        instance_rng rng(seed);
        const phase_point<rat> xr = generate_manybody(k, n, rng);
        check_row row = start_row(base + "/positions", check_backend::floating,
                                  manybody_digest(k, xr));
        const phase_point<cplx> x = to_cplx_point(xr);
        const duality_map_result res = dualize(k, x, kInf);
        const std::vector<cplx> ev = eig_values(to_cplx_matrix(lax(k, x)));
        double scale = 1.0, worst = 0.0;
        for (const cplx& v : ev) scale = std::max(scale, std::abs(v));
        for (std::size_t i = 0; i < ev.size(); ++i)
          worst = std::max(worst, std::abs(res.dual.q[i] - ev[i]));
        row.residual = worst / scale;
        row.tolerance = pos_tol;
        row.pass = row.residual <= pos_tol;
        return row;
      });
    }
  }
}

// ---------------------------------------------------------------------------
// Suite: anticanonical (float). Central-difference Jacobian of each duality
// map satisfies J^T Omega J = -Omega.
void build_anticanonical(suite_ctx& ctx) {
  const int trials = ctx.trials(20);
  const std::size_t hi = ctx.n_hi(3);
  for (const model_kind k :
       {model_kind::rational_cm, model_kind::trig_cms, model_kind::trig_rs}) {
    const std::string base = std::string("anticanonical/") + kind_name(k);
    for (int t = 0; t < trials; ++t) {
      const std::size_t n = cycle(2, hi, t);
      const std::string id = base + "/n" + std::to_string(n);
      const std::uint64_t seed = ctx.trial_seed(base, t);
      const double tol = ctx.tol(1e-5);
      ctx.add(id, check_backend::floating, [=]() {
        instance_rng rng(seed);
        const phase_point<rat> xr = generate_manybody(k, n, rng);
        check_row row = start_row(id, check_backend::floating, manybody_digest(k, xr));
        row.residual = anticanonical_residual(k, to_cplx_point(xr));
        row.tolerance = tol;
        row.pass = row.residual <= tol;
        return row;
      });
    }
  }
}

// ---------------------------------------------------------------------------
// Suite: spectral-curves (exact). The cleared bivariate spectral polynomial
// of the dual model is the transpose of the original's, bit-exactly.
void build_spectral_curves(suite_ctx& ctx) {
  const int trials = ctx.trials(25);
  const std::size_t n_hi = ctx.n_hi(4);
  const std::size_t m_hi = ctx.m_hi(4);
  for (const lax_kind k : {lax_kind::rational_gaudin, lax_kind::trig_gaudin_reduced,
                           lax_kind::xxx_chain, lax_kind::xxz_chain}) {
    const std::string base = std::string("spectral-curves/") + lax_kind_name(k);
    for (int t = 0; t < trials; ++t) {
      const std::size_t n = cycle(2, n_hi, t);
      const std::size_t m = cycle(std::min<std::size_t>(2, m_hi), m_hi, t / 3);
      const std::string id = base + "/n" + std::to_string(n) + "m" + std::to_string(m);
      const std::uint64_t seed = ctx.trial_seed(base, t);
      ctx.add(id, check_backend::exact, [=]() {
        instance_rng rng(seed);
        const multi_pole_lax<rat> L = generate_multipole(k, n, m, rng);
        check_row row = start_row(id, check_backend::exact,
                                  content_digest(canonical_dump(multipole_to_json(L))));
        const multi_pole_lax<rat> D = spectral_dual(L);
        const bivariate_poly<rat> a = spectral_poly(L);
        const bivariate_poly<rat> b = spectral_poly(D);
        row.residual = curves_transpose_distance(a, b);
        row.pass = curves_transpose_equal(a, b);
        return row;
      });
    }
  }
}

// ---------------------------------------------------------------------------
// Suite: ybe (exact). The classical Yang-Baxter combination vanishes for both
// r-matrix kinds at generic multiplicative argument triples.
void build_ybe(suite_ctx& ctx) {
  const int trials = ctx.trials(20);
  const std::size_t hi = ctx.n_hi(3);
  for (const r_matrix_kind k : {r_matrix_kind::xxz_multiplicative, r_matrix_kind::twisted}) {
    const std::string base = std::string("ybe/") +
                             (k == r_matrix_kind::xxz_multiplicative ? "multiplicative"
                                                                     : "twisted");
    for (int t = 0; t < trials; ++t) {
      const std::size_t n = cycle(2, hi, t);
      const std::string id = base + "/n" + std::to_string(n);
      const std::uint64_t seed = ctx.trial_seed(base, t);
      ctx.add(id, check_backend::exact, [=]() {
        instance_rng rng(seed);
        const std::vector<rat> z = rng.draw_distinct(3, true);
        njson desc;
        desc["n"] = n;
        desc["z"] = vector_to_json(z);
        check_row row =
            start_row(id, check_backend::exact, content_digest(canonical_dump(desc)));
        row.residual = cybe_residual(k, n, z[0], z[1], z[2]);
        row.pass = row.residual == 0.0;
        return row;
      });
    }
  }
}

// ---------------------------------------------------------------------------
// Suite: gauge-lemma (exact). The band recursion and the closed product form
// of the triangular gauge agree bit-exactly, and the gauge conjugates the
// twist-plus-lower-triangle back to the bare twist.
void build_gauge_lemma(suite_ctx& ctx) {
  const int trials = ctx.trials(50);
  const std::size_t n_hi = ctx.n_hi(6);
  const std::size_t m_hi = ctx.m_hi(3);
  const std::string key = "gauge-lemma";
  for (int t = 0; t < trials; ++t) {
    const std::size_t n = cycle(2, n_hi, t);
    const std::size_t m = cycle(1, m_hi, t);
    const std::string suffix = "/n" + std::to_string(n) + "m" + std::to_string(m);
    const std::uint64_t seed = ctx.trial_seed(key, t);

    const auto draw = [=](instance_rng& rng, std::vector<rat>& lambda, matrix<rat>& xi,
                          matrix<rat>& eta) {
      lambda = rng.draw_distinct(n, false);
      xi = rng.draw_matrix_nonzero(n, m);
      eta = rng.draw_matrix_nonzero(m, n);
      njson desc;
      desc["lambda"] = vector_to_json(lambda);
      desc["xi"] = matrix_to_json(xi);
      desc["eta"] = matrix_to_json(eta);
      return content_digest(canonical_dump(desc));
    };
    const auto strict_lower = [](const matrix<rat>& full) {
      matrix<rat> sbar(full.rows(), full.cols());
      for (std::size_t i = 0; i < full.rows(); ++i)
        for (std::size_t j = 0; j < i; ++j) sbar(i, j) = full(i, j);
      return sbar;
    };

    ctx.add(key + "/recursion-vs-closed" + suffix, check_backend::exact, [=]() {
      instance_rng rng(seed);
      std::vector<rat> lambda;
      matrix<rat> xi, eta;
      const std::string digest = draw(rng, lambda, xi, eta);
      check_row row =
          start_row(key + "/recursion-vs-closed" + suffix, check_backend::exact, digest);
      const matrix<rat> rec = gauge_matrix_recursive(lambda, strict_lower(xi * eta));
      const matrix<rat> closed = gauge_matrix_closed(lambda, xi, eta);
      row.residual = (rec - closed).max_abs();
      row.pass = rec == closed;
      return row;
    });
    ctx.add(key + "/conjugation" + suffix, check_backend::exact, [=]() {
      instance_rng rng(seed);
      std::vector<rat> lambda;
      matrix<rat> xi, eta;
      const std::string digest = draw(rng, lambda, xi, eta);
      check_row row = start_row(key + "/conjugation" + suffix, check_backend::exact, digest);
      const matrix<rat> sbar = strict_lower(xi * eta);
      const matrix<rat> g = gauge_matrix_recursive(lambda, sbar);
      const matrix<rat> twist = matrix<rat>::diagonal(lambda);
      const matrix<rat> conj = g.inverse() * (twist + sbar) * g;
      row.residual = (conj - twist).max_abs();
      row.pass = conj == twist;
      return row;
    });
  }
}

// ---------------------------------------------------------------------------
// Suite: cc-duality (exact). The quadratic expansion of both connections over
// the rational CM Lax reproduces the CM Hamiltonian at order zero and the
// documented pole coefficients exactly.
void build_cc_duality(suite_ctx& ctx) {
  const int trials = ctx.trials(25);
  const std::size_t hi = ctx.n_hi(6);
  for (const connection_kind k : {connection_kind::gaudin, connection_kind::schlesinger}) {
    const std::string base = std::string("cc-duality/") + connection_kind_name(k);
    for (int t = 0; t < trials; ++t) {
      const std::size_t n = cycle(2, hi, t);
      const std::string id = base + "/n" + std::to_string(n);
      const std::uint64_t seed = ctx.trial_seed(base, t);
      ctx.add(id, check_backend::exact, [=]() {
        instance_rng rng(seed);
        const phase_point<rat> x = generate_manybody(model_kind::rational_cm, n, rng);
        check_row row = start_row(id, check_backend::exact,
                                  manybody_digest(model_kind::rational_cm, x));
        const cc_report<rat> rep = verify_cc_identifications(k, x);
        row.residual = rep.reconstruction_residual;
        row.pass = rep.identities_hold && rep.reconstruction_residual == 0.0;
        return row;
      });
    }
  }
}

// ---------------------------------------------------------------------------
// Suite: flows. Float rows: invariant drift of the many-body flows at unit
// time with dt = 1e-3, the order-4 convergence window, and the Gaudin flow's
// conservation and commutation. Exact row: the isomonodromic consistency
// residual vanishes bit-exactly on rational data.

// Flow instances need comfortable separations: integer position grid with a
// deterministic imaginary ladder (complex separations never fall below 1/7),
// momenta and couplings of order one.
phase_point<rat> flow_point(model_kind k, std::size_t n, instance_rng& rng) {
  phase_point<rat> x;
  std::vector<long> used;
  while (used.size() < n) {
    const long v = rng.ival(-6, 6);
    if (position_multiplicative(k) && v == 0) continue;
    if (std::find(used.begin(), used.end(), v) != used.end()) continue;
    used.push_back(v);
  }
  x.q.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    x.q[i] = rat(bigq(used[i]), bigq(static_cast<long>(i) + 1, 7));
  x.p.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    rat p = rng.draw_real(2, 3);
    while (momentum_multiplicative(k) && p.is_zero()) p = rng.draw_real(2, 3);
    x.p[i] = p;
  }
  x.nu = rng.draw_real(2, 3);
  while (x.nu.is_zero() || (coupling_multiplicative(k) && x.nu == rat(1)))
    x.nu = rng.draw_real(2, 3);
  validate_phase_point(k, x);
  return x;
}

// Small-entry dense connection with Gaussian-integer poles (separations >= 1).
pole_connection<rat> flow_connection(std::size_t n, std::size_t m, instance_rng& rng) {
  pole_connection<rat> conn;
  conn.base = rng.draw_matrix(n, n, 2, 3);
  conn.poles = rng.draw_distinct(m, false, 6, 1);
  conn.residues.reserve(m);
  for (std::size_t a = 0; a < m; ++a) conn.residues.push_back(rng.draw_matrix(n, n, 2, 3));
  validate_connection(conn);
  return conn;
}

// Order-4 ratio from a step-count ladder. Successive halvings only show the
// textbook 2^4 factor once the coarse drift is past the pre-asymptotic cliff
// and the fine drift still sits above roundoff, so the deepest adjacent pair
// with coarse <= 1e-5 and fine >= 1e-12 is measured. Returns nothing when no
// rung pair qualifies (near-frozen instances never accumulate enough error).
std::optional<double> measured_order_ratio(model_kind k, const phase_point<cplx>& x) {
  std::vector<double> drifts;
  for (const int steps : {20, 40, 80, 160, 320, 640, 1280, 2560}) {
    try {
      drifts.push_back(evolve_manybody(k, x, 1.0, steps).max_drift);
    } catch (const numeric_failure&) {
      drifts.push_back(std::numeric_limits<double>::quiet_NaN());
    }
  }
  std::optional<double> ratio;
  for (std::size_t i = 0; i + 1 < drifts.size(); ++i) {
    const double coarse = drifts[i], fine = drifts[i + 1];
    if (std::isfinite(coarse) && std::isfinite(fine) && coarse <= 1e-5 &&
        fine >= 1e-12)
      ratio = coarse / fine;
  }
  return ratio;
}

void build_flows(suite_ctx& ctx) {
  const std::size_t n_hi = ctx.n_hi(4);

  for (const model_kind k : {model_kind::rational_cm, model_kind::trig_cms,
                             model_kind::rational_rs, model_kind::trig_rs}) {
    const std::string base = std::string("flows/manybody/") + kind_name(k);
    const int trials = ctx.trials(5);
    for (int t = 0; t < trials; ++t) {
      const std::size_t n = cycle(2, n_hi, t);
      const std::string id = base + "/n" + std::to_string(n);
      const std::uint64_t seed = ctx.trial_seed(base, t);
      const double tol = ctx.tol(1e-7);
      ctx.add(id, check_backend::floating, [=]() {
        instance_rng rng(seed);
        const phase_point<rat> xr = flow_point(k, n, rng);
        check_row row = start_row(id, check_backend::floating, manybody_digest(k, xr));
        row.residual = evolve_manybody(k, to_cplx_point(xr), 1.0, 1000).max_drift;
        row.tolerance = tol;
        row.pass = row.residual <= tol;
        return row;
      });
    }
  }

  for (const model_kind k : {model_kind::rational_cm, model_kind::trig_rs}) {
    const std::string base = std::string("flows/convergence/") + kind_name(k);
    const int trials = ctx.trials(3);
    for (int t = 0; t < trials; ++t) {
      const std::size_t n = cycle(3, std::max<std::size_t>(3, n_hi), t);
      const std::string id = base + "/n" + std::to_string(n);
      const std::uint64_t seed = ctx.trial_seed(base, t);
      const double tol = ctx.tol(1.0);  // window in log2 units around ratio 16
      ctx.add(id, check_backend::floating, [=]() {
        for (int attempt = 0; attempt < 5; ++attempt) {
          instance_rng rng(seed + 0x9E3779B97F4A7C15ull * attempt);
          const phase_point<rat> xr = flow_point(k, n, rng);
          const std::optional<double> ratio = measured_order_ratio(k, to_cplx_point(xr));
          if (!ratio) continue;  // no measurable rung pair; redraw deterministically
          check_row row = start_row(id, check_backend::floating, manybody_digest(k, xr));
          row.residual = std::abs(std::log2(*ratio) - 4.0);
          row.tolerance = tol;
          row.pass = row.residual <= tol;
          return row;
        }
        throw numeric_failure("convergence probe: no instance with measurable drift");
      });
    }
  }

  {
    const std::string base = "flows/gaudin/conservation";
    const int trials = ctx.trials(5);
    for (int t = 0; t < trials; ++t) {
      const std::size_t n = cycle(2, std::min<std::size_t>(3, n_hi), t);
      const std::size_t m = cycle(2, ctx.m_hi(3), t);
      const std::string id = base + "/n" + std::to_string(n) + "m" + std::to_string(m);
      const std::uint64_t seed = ctx.trial_seed(base, t);
      const double tol = ctx.tol(1e-7);
      ctx.add(id, check_backend::floating, [=]() {
        instance_rng rng(seed);
        const pole_connection<rat> cr = flow_connection(n, m, rng);
        check_row row = start_row(id, check_backend::floating,
                                  content_digest(canonical_dump(connection_to_json(cr))));
        const gaudin_flow_result r =
            evolve_gaudin(to_cplx_connection(cr), static_cast<std::size_t>(t) % m, 0.3, 300);
        row.residual = r.max_drift;
        row.tolerance = tol;
        row.pass = row.residual <= tol;
        return row;
      });
    }
  }

  {
    const std::string base = "flows/gaudin/commutation";
    const int trials = ctx.trials(3);
    for (int t = 0; t < trials; ++t) {
      const std::size_t n = cycle(2, std::min<std::size_t>(3, n_hi), t);
      const std::size_t m = std::max<std::size_t>(2, cycle(2, ctx.m_hi(3), t));
      const std::string id = base + "/n" + std::to_string(n) + "m" + std::to_string(m);
      const std::uint64_t seed = ctx.trial_seed(base, t);
      const double tol = ctx.tol(1e-7);
      ctx.add(id, check_backend::floating, [=]() {
        instance_rng rng(seed);
        const pole_connection<rat> cr = flow_connection(n, m, rng);
        check_row row = start_row(id, check_backend::floating,
                                  content_digest(canonical_dump(connection_to_json(cr))));
        row.residual = gaudin_flow_commutation(to_cplx_connection(cr), 0, 1, 0.3, 300);
        row.tolerance = tol;
        row.pass = row.residual <= tol;
        return row;
      });
    }
  }

  {
    const std::string base = "flows/schlesinger/residual";
    const int trials = ctx.trials(10);
    for (int t = 0; t < trials; ++t) {
      const std::size_t n = cycle(2, std::min<std::size_t>(3, n_hi), t);
      const std::size_t m = cycle(2, ctx.m_hi(3), t);
      const std::string id = base + "/n" + std::to_string(n) + "m" + std::to_string(m);
      const std::uint64_t seed = ctx.trial_seed(base, t);
      ctx.add(id, check_backend::exact, [=]() {
        instance_rng rng(seed);
        const pole_connection<rat> conn = generate_connection(n, m, rng);
        check_row row = start_row(id, check_backend::exact,
                                  content_digest(canonical_dump(connection_to_json(conn))));
        rat z = rng.draw();
        for (bool clash = true; clash;) {
          clash = false;
          for (const rat& p : conn.poles)
            if (z == p) clash = true;
          if (clash) z = rng.draw();
        }
        const rat kappa = rng.draw_nonzero();
        const matrix<rat> res = schlesinger_residual_matrix(
            conn, static_cast<std::size_t>(t) % m, z, kappa);
        row.residual = res.max_abs();
        row.pass = res.is_zero();
        return row;
      });
    }
  }
}

// ---------------------------------------------------------------------------
// Suite: pq-via-spectral. Float rows: the spectral-duality route reproduces
// the direct duality maps. Exact rows: the characteristic polynomial of every
// fictitious spectral-parameter extension is independent of z, bit-exactly.
void build_pq_via_spectral(suite_ctx& ctx) {
  const std::size_t hi = ctx.n_hi(4);
  for (const model_kind k :
       {model_kind::rational_cm, model_kind::trig_cms, model_kind::trig_rs}) {
    const std::string base = std::string("pq-via-spectral/") + kind_name(k);
    const int trials = ctx.trials(10);
    for (int t = 0; t < trials; ++t) {
      const std::size_t n = cycle(2, hi, t);
      const std::uint64_t seed = ctx.trial_seed(base, t);
      const double tol = ctx.tol(1e-8);
      ctx.add(base + "/sandwich", check_backend::floating, [=]() {
        instance_rng rng(seed);
        const phase_point<rat> xr = generate_manybody(k, n, rng);
        check_row row =
            start_row(base + "/sandwich", check_backend::floating, manybody_digest(k, xr));
        row.residual = pq_via_spectral(k, to_cplx_point(xr), kInf).residual;
        row.tolerance = tol;
        row.pass = row.residual <= tol;
        return row;
      });
      ctx.add(base + "/z-independence", check_backend::exact, [=]() {
        instance_rng rng(seed);
        const phase_point<rat> x = generate_manybody(k, n, rng);
        check_row row =
            start_row(base + "/z-independence", check_backend::exact, manybody_digest(k, x));
        const multi_pole_lax<rat> raw = fictitious_lax_raw(k, x);
        const std::vector<rat> cp0 = char_poly(lax(k, x));
        const std::vector<rat> zs = detail::curve_samples(raw.poles, 2);
        double worst = 0.0;
        bool equal = true;
        for (const rat& z : zs) {
          const std::vector<rat> cp = char_poly(evaluate(raw, z));
          for (std::size_t i = 0; i < cp.size(); ++i) {
            if (cp[i] != cp0[i]) equal = false;
            worst = std::max(worst, scalar_ops<rat>::approx_abs(cp[i] - cp0[i]));
          }
        }
        row.residual = worst;
        row.pass = equal;
        return row;
      });
    }
  }
}

using builder_fn = void (*)(suite_ctx&);

const std::vector<std::pair<std::string, builder_fn>>& suite_table() {
  static const std::vector<std::pair<std::string, builder_fn>> table = {
      {"moment-maps", build_moment_maps},
      {"pq-duality", build_pq_duality},
      {"anticanonical", build_anticanonical},
      {"spectral-curves", build_spectral_curves},
      {"ybe", build_ybe},
      {"gauge-lemma", build_gauge_lemma},
      {"cc-duality", build_cc_duality},
      {"flows", build_flows},
      {"pq-via-spectral", build_pq_via_spectral},
  };
  return table;
}

std::size_t thread_cap() {
  std::size_t cap = std::min<std::size_t>(
      std::max(1u, std::thread::hardware_concurrency()), 8);
  if (const char* env = std::getenv("DUALITY_LAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) cap = static_cast<std::size_t>(v);
  }
  return cap;
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

std::string csv_escape(const std::string& s) {
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += "\"\"";
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : suite_table()) v.push_back(name);
    return v;
  }();
  return names;
}

suite_report run_suite(const suite_config& cfg) {
  if (cfg.trials < 0) throw domain_violation("run_suite: trials must be non-negative");
  if (!cfg.backend.empty() && cfg.backend != "exact" && cfg.backend != "float")
    throw domain_violation("run_suite: backend must be 'exact' or 'float'");
  if (cfg.tol < 0.0) throw domain_violation("run_suite: tolerance must be non-negative");

  std::vector<pending_check> pending;
  suite_ctx ctx{cfg, pending};
  bool known = false;
  for (const auto& [name, fn] : suite_table()) {
    if (cfg.suite == "all" || cfg.suite == name) {
      fn(ctx);
      known = true;
    }
  }
  if (!known) throw domain_violation("run_suite: unknown suite '" + cfg.suite + "'");
  if (pending.empty())
    throw domain_violation("run_suite: suite '" + cfg.suite +
                           "' has no checks for backend filter '" + cfg.backend + "'");

  suite_report rep;
  rep.config = cfg;
  rep.rows.resize(pending.size());

  const auto t0 = std::chrono::steady_clock::now();
  std::atomic<std::size_t> next{0};
  const auto worker = [&]() {
    for (std::size_t i; (i = next.fetch_add(1)) < pending.size();) {
      const pending_check& pc = pending[i];
      check_row row;
      try {
        row = pc.run();
      } catch (const std::exception& e) {
        row = start_row(pc.check_id, pc.backend, "");
        row.residual = kInf;
        row.pass = false;
        row.note = e.what();
      }
      rep.rows[i] = std::move(row);
    }
  };
  const std::size_t nt = std::min(thread_cap(), pending.size());
  if (nt <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (std::size_t i = 0; i < nt; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  const auto t1 = std::chrono::steady_clock::now();
  rep.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

  for (const check_row& row : rep.rows) (row.pass ? rep.passed : rep.failed) += 1;
  rep.all_pass = rep.failed == 0;
  return rep;
}

std::string report_json(const suite_report& rep) {
  njson j;
  j["config"] = {{"suite", rep.config.suite},       {"seed", rep.config.seed},
                 {"trials", rep.config.trials},     {"n_max", rep.config.n_max},
                 {"m_max", rep.config.m_max},       {"backend", rep.config.backend},
                 {"tol", rep.config.tol}};
  njson rows = njson::array();
  for (const check_row& row : rep.rows) {
    njson r;
    r["check_id"] = row.check_id;
    r["instance_digest"] = row.instance_digest;
    r["backend"] = backend_name(row.backend);
    if (std::isfinite(row.residual))
      r["residual"] = row.residual;
    else
      r["residual"] = "inf";
    r["tolerance"] = row.tolerance;
    r["pass"] = row.pass;
    r["note"] = row.note;
    rows.push_back(std::move(r));
  }
  j["checks"] = std::move(rows);
  j["summary"] = {{"total", rep.rows.size()},
                  {"passed", rep.passed},
                  {"failed", rep.failed},
                  {"all_pass", rep.all_pass}};
  return canonical_dump(j);
}

std::string report_csv(const suite_report& rep) {
  std::string out = "check_id,instance_digest,backend,residual,tolerance,pass,note\n";
  for (const check_row& row : rep.rows) {
    out += csv_escape(row.check_id) + ',' + row.instance_digest + ',' +
           backend_name(row.backend) + ',' + fmt_double(row.residual) + ',' +
           fmt_double(row.tolerance) + ',' + (row.pass ? "1" : "0") + ',' +
           csv_escape(row.note) + '\n';
  }
  return out;
}

}  // namespace duality
