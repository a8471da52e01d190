#include "duality/flows.hpp"

#include <cmath>
#include <complex>
#include <functional>

#include "duality/charpoly.hpp"

namespace duality {

namespace {

using state_t = std::vector<cplx>;

state_t state_from_natural(model_kind k, const phase_point<cplx>& x) {
  const std::size_t n = x.q.size();
  state_t y(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = position_multiplicative(k) ? std::log(x.q[i]) : x.q[i];
    y[n + i] = momentum_multiplicative(k) ? std::log(x.p[i]) : x.p[i];
  }
  return y;
}

phase_point<cplx> natural_from_state(model_kind k, const state_t& y, const cplx& nu) {
  const std::size_t n = y.size() / 2;
  phase_point<cplx> x;
  x.q.resize(n);
  x.p.resize(n);
  x.nu = nu;
  for (std::size_t i = 0; i < n; ++i) {
    x.q[i] = position_multiplicative(k) ? std::exp(y[i]) : y[i];
    x.p[i] = momentum_multiplicative(k) ? std::exp(y[n + i]) : y[n + i];
  }
  return x;
}

// Equations of motion in additive coordinates.
state_t eom(model_kind k, const state_t& y, const cplx& nu) {
  const std::size_t n = y.size() / 2;
  state_t d(2 * n, cplx(0.0));
  switch (k) {
    case model_kind::rational_cm: {
      for (std::size_t i = 0; i < n; ++i) {
        d[i] = y[n + i];
        cplx acc(0.0);
        for (std::size_t j = 0; j < n; ++j) {
          if (j == i) continue;
          const cplx dq = y[i] - y[j];
          acc += 1.0 / (dq * dq * dq);
        }
        d[n + i] = -2.0 * nu * nu * acc;
      }
      break;
    }
    case model_kind::trig_cms: {
      std::vector<cplx> w(n);
      for (std::size_t i = 0; i < n; ++i) w[i] = std::exp(y[i]);
      for (std::size_t i = 0; i < n; ++i) {
        d[i] = y[n + i];
        cplx acc(0.0);
        for (std::size_t j = 0; j < n; ++j) {
          if (j == i) continue;
          const cplx dw = w[i] - w[j];
          acc += w[i] * w[j] * (w[i] + w[j]) / (dw * dw * dw);
        }
        d[n + i] = -nu * nu * acc;
      }
      break;
    }
    case model_kind::rational_rs: {
      std::vector<cplx> q(y.begin(), y.begin() + n), u(n);
      for (std::size_t i = 0; i < n; ++i) u[i] = std::exp(y[n + i]);
      const std::vector<cplx> b = rs_b_products(q, nu);
      for (std::size_t i = 0; i < n; ++i) d[i] = u[i] * b[i];
      for (std::size_t i = 0; i < n; ++i) {
        cplx acc(0.0);
        for (std::size_t j = 0; j < n; ++j) {
          cplx db;  // d b_j / d q_i
          if (j != i) {
            const cplx dq = q[j] - q[i];
            db = b[j] * (1.0 / dq - 1.0 / (dq - nu));
          } else {
            cplx s(0.0);
            for (std::size_t m = 0; m < n; ++m) {
              if (m == i) continue;
              const cplx dq = q[i] - q[m];
              s += 1.0 / (dq - nu) - 1.0 / dq;
            }
            db = b[i] * s;
          }
          acc += u[j] * db;
        }
        d[n + i] = -acc;
      }
      break;
    }
    case model_kind::trig_rs: {
      std::vector<cplx> w(n), u(n);
      for (std::size_t i = 0; i < n; ++i) {
        w[i] = std::exp(y[i]);
        u[i] = std::exp(y[n + i]);
      }
      const cplx t = nu;
      const std::vector<cplx> c = rs_c_products(w, t);
      for (std::size_t i = 0; i < n; ++i) d[i] = u[i] * c[i];
      for (std::size_t i = 0; i < n; ++i) {
        cplx acc(0.0);
        for (std::size_t j = 0; j < n; ++j) {
          cplx dc;  // d c_j / d w_i
          if (j != i) {
            dc = c[j] * (1.0 / (w[j] - w[i]) - 1.0 / (t * w[j] - w[i]));
          } else {
            cplx s(0.0);
            for (std::size_t m = 0; m < n; ++m) {
              if (m == j) continue;
              s += t / (t * w[j] - w[m]) - 1.0 / (w[j] - w[m]);
            }
            dc = c[j] * s;
          }
          acc += u[j] * dc;
        }
        d[n + i] = -w[i] * acc;
      }
      break;
    }
  }
  return d;
}

bool finite(const cplx& v) {
  return std::isfinite(v.real()) && std::isfinite(v.imag());
}

// Pairwise-separation monitor on the natural coordinates; the flows are only
// trusted while the phase point stays inside the validity domain.
void check_separation(model_kind k, const phase_point<cplx>& x) {
  constexpr double floor_sep = 1e-8;
  const std::size_t n = x.q.size();
  for (std::size_t i = 0; i < n; ++i)
    if (!finite(x.q[i]) || !finite(x.p[i]))
      throw numeric_failure("evolve_manybody: state left the resolvable domain");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(x.q[i] - x.q[j]) < floor_sep)
        throw numeric_failure("evolve_manybody: position collision along the flow");
  if (k == model_kind::rational_rs) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && std::abs(x.q[i] - x.q[j] + x.nu) < floor_sep)
          throw numeric_failure("evolve_manybody: coupling resonance along the flow");
  }
  if (k == model_kind::trig_rs) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (std::abs(x.q[i] - x.nu * x.q[j]) < floor_sep)
          throw numeric_failure("evolve_manybody: coupling resonance along the flow");
  }
  if (position_multiplicative(k))
    for (std::size_t i = 0; i < n; ++i)
      if (std::abs(x.q[i]) < floor_sep)
        throw numeric_failure("evolve_manybody: multiplicative position collapsed");
}

std::vector<cplx> invariants(model_kind k, const phase_point<cplx>& x) {
  const matrix<cplx> l = lax(k, x);
  const std::size_t n = l.rows();
  std::vector<cplx> out;
  matrix<cplx> p = l;
  for (std::size_t kk = 2; kk <= n; ++kk) {
    p = p * l;
    out.push_back(p.trace());
  }
  if (out.empty()) out.push_back((l * l).trace());  // n = 1 still tracks tr L^2
  return out;
}

double rel_diff(const cplx& a, const cplx& b) {
  return std::abs(a - b) / std::max(1.0, std::abs(b));
}

}  // namespace

flow_result evolve_manybody(model_kind k, const phase_point<cplx>& x, double t_end,
                            int steps) {
  validate_phase_point(k, x);
  if (steps <= 0) throw domain_violation("evolve_manybody: steps must be positive");
  const std::vector<cplx> inv0 = invariants(k, x);
  const cplx h0 = hamiltonian(k, x);
  const double h_scale = std::max(1.0, std::abs(h0));

  state_t y = state_from_natural(k, x);
  const double h = t_end / steps;
  const auto f = [&](const state_t& s) { return eom(k, s, x.nu); };
  const auto shifted = [](const state_t& base, const state_t& dir, double c) {
    state_t out(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) out[i] = base[i] + c * dir[i];
    return out;
  };
  for (int s = 0; s < steps; ++s) {
    const state_t k1 = f(y);
    const state_t k2 = f(shifted(y, k1, h / 2));
    const state_t k3 = f(shifted(y, k2, h / 2));
    const state_t k4 = f(shifted(y, k3, h));
    for (std::size_t i = 0; i < y.size(); ++i)
      y[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    const phase_point<cplx> current = natural_from_state(k, y, x.nu);
    check_separation(k, current);
    // Energy guard: RK4 conserves H to integrator accuracy (~1e-12 relative on
    // resolvable flows), so a percent-level jump means the step passed over a
    // singularity with finite but meaningless values.
    if (std::abs(hamiltonian(k, current) - h0) > 1e-2 * h_scale)
      throw numeric_failure("evolve_manybody: conserved energy broke down mid-flow");
  }

  flow_result out;
  out.end = natural_from_state(k, y, x.nu);
  out.t_end = t_end;
  out.steps = steps;
  const std::vector<cplx> inv1 = invariants(k, out.end);
  out.invariant_drift.resize(inv0.size());
  for (std::size_t i = 0; i < inv0.size(); ++i) {
    out.invariant_drift[i] = rel_diff(inv1[i], inv0[i]);
    out.max_drift = std::max(out.max_drift, out.invariant_drift[i]);
  }
  return out;
}

double flow_convergence_ratio(model_kind k, const phase_point<cplx>& x, double t_end,
                              int steps) {
  const double coarse = evolve_manybody(k, x, t_end, steps).max_drift;
  const double fine = evolve_manybody(k, x, t_end, 2 * steps).max_drift;
  if (fine <= 1e-15)
    throw numeric_failure(
        "flow_convergence_ratio: refined drift at roundoff, increase t_end");
  return coarse / fine;
}

namespace {

std::vector<matrix<cplx>> scaled_sum(const std::vector<matrix<cplx>>& base,
                                     const std::vector<matrix<cplx>>& dir, double c) {
  std::vector<matrix<cplx>> out = base;
  for (std::size_t j = 0; j < out.size(); ++j) out[j] += cplx(c) * dir[j];
  return out;
}

struct gaudin_diag {
  std::vector<cplx> casimirs;
  std::vector<cplx> hams;
  std::vector<cplx> spectral;
};

gaudin_diag gaudin_diagnostics(const pole_connection<cplx>& conn,
                               const std::vector<cplx>& samples) {
  gaudin_diag d;
  for (const auto& s : conn.residues) d.casimirs.push_back((s * s).trace());
  d.hams = expand_quadratic(conn).h;
  for (const cplx& z : samples) {
    const std::vector<cplx> cp = char_poly(connection_value(conn, z));
    d.spectral.insert(d.spectral.end(), cp.begin(), cp.end());
  }
  return d;
}

double family_drift(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double out = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) out = std::max(out, std::abs(a[i] - b[i]) / std::max(1.0, std::abs(b[i])));
  return out;
}

}  // namespace

gaudin_flow_result evolve_gaudin(const pole_connection<cplx>& conn,
                                 std::size_t flow_index, double t_end, int steps) {
  validate_connection(conn);
  if (flow_index >= conn.poles.size())
    throw domain_violation("evolve_gaudin: flow index out of range");
  if (steps <= 0) throw domain_violation("evolve_gaudin: steps must be positive");

  const std::vector<cplx> samples = detail::curve_samples(conn.poles, 2);
  const gaudin_diag d0 = gaudin_diagnostics(conn, samples);

  pole_connection<cplx> cur = conn;
  const double h = t_end / steps;
  const auto f = [&](const std::vector<matrix<cplx>>& res) {
    pole_connection<cplx> tmp = cur;
    tmp.residues = res;
    return schlesinger_vector_field(tmp, flow_index);
  };
  for (int s = 0; s < steps; ++s) {
    const auto k1 = f(cur.residues);
    const auto k2 = f(scaled_sum(cur.residues, k1, h / 2));
    const auto k3 = f(scaled_sum(cur.residues, k2, h / 2));
    const auto k4 = f(scaled_sum(cur.residues, k3, h));
    for (std::size_t j = 0; j < cur.residues.size(); ++j)
      cur.residues[j] += cplx(h / 6.0) * (k1[j] + cplx(2.0) * k2[j] +
                                          cplx(2.0) * k3[j] + k4[j]);
  }

  gaudin_flow_result out;
  out.end = cur;
  out.t_end = t_end;
  out.steps = steps;
  const gaudin_diag d1 = gaudin_diagnostics(cur, samples);
  out.casimir_drift = family_drift(d1.casimirs, d0.casimirs);
  out.hamiltonian_drift = family_drift(d1.hams, d0.hams);
  out.spectral_drift = family_drift(d1.spectral, d0.spectral);
  out.max_drift =
      std::max({out.casimir_drift, out.hamiltonian_drift, out.spectral_drift});
  return out;
}

double gaudin_flow_commutation(const pole_connection<cplx>& conn, std::size_t a,
                               std::size_t b, double t_end, int steps) {
  const pole_connection<cplx> ab =
      evolve_gaudin(evolve_gaudin(conn, a, t_end, steps).end, b, t_end, steps).end;
  const pole_connection<cplx> ba =
      evolve_gaudin(evolve_gaudin(conn, b, t_end, steps).end, a, t_end, steps).end;
  double out = 0.0;
  for (std::size_t j = 0; j < ab.residues.size(); ++j)
    out = std::max(out, rel_distance(ab.residues[j], ba.residues[j]));
  return out;
}

}  // namespace duality
