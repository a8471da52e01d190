// duality-lab: command-line driver for the duality verification library.
// One binary, seven subcommands:
//   verify     run a named check suite (or all) and emit a JSON/CSV report
//   gen        deterministically generate an instance descriptor
//   map        apply the position-momentum duality to a many-body descriptor
//   dualize    apply the spectral twist<->pole swap to a multi-pole Lax model
//   curve      print the cleared bivariate spectral-curve coefficients
//   flow       integrate a Hamiltonian flow, emitting per-step invariants
//   ccduality  itemize the quadratic-expansion identifications of a CM point
// Exit codes: 0 success / all checks pass, 1 check failure, 2 usage error.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "duality/flows.hpp"
#include "duality/instances.hpp"
#include "duality/json_io.hpp"
#include "duality/pq_duality.hpp"
#include "duality/spectral_duality.hpp"
#include "duality/suites.hpp"

namespace {

using namespace duality;

std::string read_input(const std::string& path) {
  std::ostringstream ss;
  if (path.empty() || path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw domain_violation("cannot open input file '" + path + "'");
    ss << in.rdbuf();
  }
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw domain_violation("cannot open output file '" + path + "'");
  out << text;
}

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// verify

struct verify_opts {
  std::string config_file;
  std::string suite = "all";
  std::uint64_t seed = 42;
  int trials = 0;
  std::size_t n_max = 0;
  std::size_t m_max = 0;
  std::string backend;
  double tol = 0.0;
  std::string out = "-";
  std::string format = "json";
};

// Flags win over the optional JSON config file: a key from the file only
// lands when the matching flag was not given on the command line.
void merge_config_file(const CLI::App& cmd, verify_opts& o) {
  const njson cfg = parse_json(read_input(o.config_file));
  if (!cfg.is_object()) throw domain_violation("config file must be a JSON object");
  const auto unset = [&cmd](const char* flag) {
    return cmd.get_option(flag)->count() == 0;
  };
  for (const auto& [key, value] : cfg.items()) {
    if (key == "suite" && unset("--suite")) o.suite = value.get<std::string>();
    else if (key == "seed" && unset("--seed")) o.seed = value.get<std::uint64_t>();
    else if (key == "trials" && unset("--trials")) o.trials = value.get<int>();
    else if (key == "n" && unset("--n")) o.n_max = value.get<std::size_t>();
    else if (key == "m" && unset("--m")) o.m_max = value.get<std::size_t>();
    else if (key == "backend" && unset("--backend")) o.backend = value.get<std::string>();
    else if (key == "tol" && unset("--tol")) o.tol = value.get<double>();
    else if (key == "out" && unset("--out")) o.out = value.get<std::string>();
    else if (key == "format" && unset("--format")) o.format = value.get<std::string>();
    else if (key != "suite" && key != "seed" && key != "trials" && key != "n" &&
             key != "m" && key != "backend" && key != "tol" && key != "out" &&
             key != "format")
      throw domain_violation("config file: unknown key '" + key + "'");
  }
}

int run_verify(const CLI::App& cmd, verify_opts& o) {
  if (!o.config_file.empty()) merge_config_file(cmd, o);
  if (o.format != "json" && o.format != "csv")
    throw domain_violation("--format must be json or csv");

  suite_config cfg;
  cfg.suite = o.suite;
  cfg.seed = o.seed;
  cfg.trials = o.trials;
  cfg.n_max = o.n_max;
  cfg.m_max = o.m_max;
  cfg.backend = o.backend;
  cfg.tol = o.tol;

  const suite_report rep = run_suite(cfg);
  write_output(o.out, o.format == "json" ? report_json(rep) : report_csv(rep));
  std::fprintf(stderr, "suite=%s rows=%zu passed=%zu failed=%zu wall=%.0fms\n",
               cfg.suite.c_str(), rep.rows.size(), rep.passed, rep.failed, rep.wall_ms);
  return rep.all_pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// gen

struct gen_opts {
  std::string kind;
  std::size_t n = 3;
  std::size_t m = 2;
  std::uint64_t seed = 42;
  std::string out = "-";
};

bool is_manybody_kind(const std::string& k) {
  return k == "rational_cm" || k == "trig_cms" || k == "rational_rs" || k == "trig_rs";
}

bool is_lax_kind(const std::string& k) {
  return k == "rational_gaudin" || k == "trig_gaudin_reduced" || k == "xxx_chain" ||
         k == "xxz_chain";
}

int run_gen(const gen_opts& o) {
  instance_rng rng(o.seed);
  njson j;
  if (is_manybody_kind(o.kind)) {
    const model_kind k = kind_from_name(o.kind);
    j = manybody_to_json(k, generate_manybody(k, o.n, rng));
  } else if (is_lax_kind(o.kind)) {
    const lax_kind k = lax_kind_from_name(o.kind);
    j = multipole_to_json(generate_multipole(k, o.n, o.m, rng));
  } else if (o.kind == "connection") {
    j = connection_to_json(generate_connection(o.n, o.m, rng));
  } else {
    throw domain_violation(
        "gen: unknown kind '" + o.kind +
        "' (many-body kinds, multi-pole Lax kinds, or 'connection')");
  }
  const std::string text = canonical_dump(j);
  write_output(o.out, text);
  std::fprintf(stderr, "digest=%s\n", content_digest(text).c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// map

struct map_opts {
  std::string input = "-";
  std::string out = "-";
  double tol = 1e-8;
};

int run_map(const map_opts& o) {
  const njson in = parse_json(read_input(o.input));
  const auto [k, x] = manybody_from_json<cplx>(in);
  const duality_map_result r = dualize(k, x, o.tol);
  njson j = manybody_to_json(r.dual_kind, r.dual);
  j["dual_of"] = njson{{"digest", content_digest(canonical_dump(in))},
                       {"kind", kind_name(r.source_kind)}};
  j["residual"] = r.residual;
  write_output(o.out, canonical_dump(j));
  return 0;
}

// ---------------------------------------------------------------------------
// dualize

struct dualize_opts {
  std::string input = "-";
  std::string direction;
  std::string backend = "exact";
  double tol = 1e-9;
  std::string out = "-";
};

std::vector<std::string> direction_kinds(const std::string& d) {
  if (d == "gaudin") return {"rational_gaudin"};
  if (d == "tgaudin-xxx") return {"trig_gaudin_reduced", "xxx_chain"};
  if (d == "xxz") return {"xxz_chain"};
  throw domain_violation("dualize: unknown direction '" + d + "'");
}

template <class S>
int run_dualize_typed(const njson& in, const dualize_opts& o) {
  const multi_pole_lax<S> L = multipole_from_json<S>(in);
  const std::vector<std::string> allowed = direction_kinds(o.direction);
  if (std::find(allowed.begin(), allowed.end(), lax_kind_name(L.kind)) == allowed.end())
    throw domain_violation(std::string("dualize: direction '") + o.direction +
                           "' does not accept kind '" + lax_kind_name(L.kind) + "'");
  const multi_pole_lax<S> dual = spectral_dual(L);
  const bivariate_poly<S> pa = spectral_poly(L);
  const bivariate_poly<S> pb = spectral_poly(dual);
  const bool equal = curves_transpose_equal(pa, pb);
  const double distance = curves_transpose_distance(pa, pb);
  const bool pass = scalar_ops<S>::is_exact ? equal : distance <= o.tol;

  njson j;
  j["model"] = multipole_to_json(dual);
  j["dual_of"] = content_digest(canonical_dump(in));
  j["identity_check"] = njson{{"direction", o.direction},
                              {"source_kind", lax_kind_name(L.kind)},
                              {"dual_kind", lax_kind_name(dual.kind)},
                              {"curves_transpose_equal", equal},
                              {"distance", distance},
                              {"pass", pass}};
  write_output(o.out, canonical_dump(j));
  return pass ? 0 : 1;
}

int run_dualize(const dualize_opts& o) {
  const njson in = parse_json(read_input(o.input));
  if (o.backend == "exact") return run_dualize_typed<rat>(in, o);
  if (o.backend == "float") return run_dualize_typed<cplx>(in, o);
  throw domain_violation("--backend must be exact or float");
}

// ---------------------------------------------------------------------------
// curve

struct curve_opts {
  std::string input = "-";
  std::string backend = "exact";
  std::string out = "-";
};

template <class S>
int run_curve_typed(const njson& in, const curve_opts& o) {
  const multi_pole_lax<S> L = multipole_from_json<S>(in);
  const bivariate_poly<S> p = spectral_poly(L);
  njson j;
  j["kind"] = lax_kind_name(L.kind);
  j["lambda_degree"] = p.lambda_degree();
  j["z_degree"] = p.z_degree();
  j["coeff"] = matrix_to_json(p.coeff);
  write_output(o.out, canonical_dump(j));
  return 0;
}

int run_curve(const curve_opts& o) {
  const njson in = parse_json(read_input(o.input));
  if (o.backend == "exact") return run_curve_typed<rat>(in, o);
  if (o.backend == "float") return run_curve_typed<cplx>(in, o);
  throw domain_violation("--backend must be exact or float");
}

// ---------------------------------------------------------------------------
// flow

struct flow_opts {
  std::string model;
  double t_end = 1.0;
  double dt = 1e-3;
  std::size_t flow = 0;
  double tol = 1e-7;
  std::string out;
};

struct flow_run {
  std::string csv;
  njson summary;
  bool pass = false;
};

void track_drift(std::vector<double>& drift, const std::vector<cplx>& base,
                 const std::vector<cplx>& now) {
  for (std::size_t i = 0; i < base.size(); ++i)
    drift[i] = std::max(drift[i],
                        std::abs(now[i] - base[i]) / std::max(1.0, std::abs(base[i])));
}

void append_row(std::string& csv, double t, const std::vector<cplx>& inv) {
  csv += fmt_g(t);
  for (const cplx& v : inv) {
    csv += ',';
    csv += fmt_g(v.real());
    csv += ',';
    csv += fmt_g(v.imag());
  }
  csv += '\n';
}

flow_run flow_manybody(const njson& in, const flow_opts& o, int steps) {
  const auto [k, x0] = manybody_from_json<cplx>(in);
  if (o.flow != 0)
    throw domain_violation(
        "flow: many-body models integrate the principal Hamiltonian flow; --flow must be 0");
  const std::size_t n = x0.q.size();

  // Conserved spectral invariants tr L^j, j = 2..n.
  const auto invariants = [k = k, n](const phase_point<cplx>& x) {
    const matrix<cplx> l = lax(k, x);
    std::vector<cplx> out;
    matrix<cplx> acc = l;
    for (std::size_t j = 1; j <= n; ++j) {
      if (j >= 2) out.push_back(acc.trace());
      if (j < n) acc = acc * l;
    }
    return out;
  };

  flow_run r;
  r.csv = "t";
  for (std::size_t j = 2; j <= n; ++j)
    r.csv += ",re_trL" + std::to_string(j) + ",im_trL" + std::to_string(j);
  r.csv += '\n';

  const std::vector<cplx> base = invariants(x0);
  std::vector<double> drift(base.size(), 0.0);
  append_row(r.csv, 0.0, base);

  const double dt = o.t_end / steps;
  phase_point<cplx> cur = x0;
  for (int s = 1; s <= steps; ++s) {
    cur = evolve_manybody(k, cur, dt, 1).end;
    const std::vector<cplx> inv = invariants(cur);
    track_drift(drift, base, inv);
    append_row(r.csv, s * dt, inv);
  }

  const double max_drift = *std::max_element(drift.begin(), drift.end());
  r.pass = max_drift <= o.tol;
  r.summary["model_kind"] = kind_name(k);
  r.summary["instance_digest"] = content_digest(canonical_dump(in));
  r.summary["flow"] = o.flow;
  r.summary["t_end"] = o.t_end;
  r.summary["dt"] = dt;
  r.summary["steps"] = steps;
  r.summary["invariant_drift"] = drift;
  r.summary["max_drift"] = max_drift;
  r.summary["tolerance"] = o.tol;
  r.summary["pass"] = r.pass;
  return r;
}

flow_run flow_gaudin(const njson& in, const flow_opts& o, int steps) {
  const pole_connection<cplx> c0 = connection_from_json<cplx>(in);
  const std::size_t m = c0.poles.size();
  if (o.flow >= m)
    throw domain_violation("flow: --flow index must name one of the poles");

  // Casimirs 1/2 tr (S^j)^2 and pole Hamiltonians
  // H_j = tr(B S^j) + sum_{b != j} tr(S^j S^b)/(z_j - z_b).
  const auto invariants = [m](const pole_connection<cplx>& c) {
    std::vector<cplx> out;
    for (std::size_t j = 0; j < m; ++j)
      out.push_back(0.5 * (c.residues[j] * c.residues[j]).trace());
    for (std::size_t j = 0; j < m; ++j) {
      cplx h = (c.base * c.residues[j]).trace();
      for (std::size_t b = 0; b < m; ++b) {
        if (b == j) continue;
        h += (c.residues[j] * c.residues[b]).trace() / (c.poles[j] - c.poles[b]);
      }
      out.push_back(h);
    }
    return out;
  };

  flow_run r;
  r.csv = "t";
  for (std::size_t j = 0; j < m; ++j)
    r.csv += ",re_C" + std::to_string(j) + ",im_C" + std::to_string(j);
  for (std::size_t j = 0; j < m; ++j)
    r.csv += ",re_H" + std::to_string(j) + ",im_H" + std::to_string(j);
  r.csv += '\n';

  const std::vector<cplx> base = invariants(c0);
  std::vector<double> drift(base.size(), 0.0);
  append_row(r.csv, 0.0, base);

  const double dt = o.t_end / steps;
  pole_connection<cplx> cur = c0;
  for (int s = 1; s <= steps; ++s) {
    cur = evolve_gaudin(cur, o.flow, dt, 1).end;
    const std::vector<cplx> inv = invariants(cur);
    track_drift(drift, base, inv);
    append_row(r.csv, s * dt, inv);
  }

  const double max_drift = *std::max_element(drift.begin(), drift.end());
  r.pass = max_drift <= o.tol;
  r.summary["model_kind"] = "gaudin_connection";
  r.summary["instance_digest"] = content_digest(canonical_dump(in));
  r.summary["flow"] = o.flow;
  r.summary["t_end"] = o.t_end;
  r.summary["dt"] = dt;
  r.summary["steps"] = steps;
  r.summary["invariant_drift"] = drift;
  r.summary["max_drift"] = max_drift;
  r.summary["tolerance"] = o.tol;
  r.summary["pass"] = r.pass;
  return r;
}

int run_flow(const flow_opts& o) {
  if (!(o.t_end > 0.0) || !(o.dt > 0.0))
    throw domain_violation("flow: --t-end and --dt must be positive");
  const long long steps = std::llround(o.t_end / o.dt);
  if (steps < 1 || steps > 10'000'000)
    throw domain_violation("flow: t_end/dt must land between 1 and 1e7 steps");

  const njson in = parse_json(read_input(o.model));
  const bool is_connection = in.is_object() && in.contains("base");
  const flow_run r = is_connection ? flow_gaudin(in, o, static_cast<int>(steps))
                                   : flow_manybody(in, o, static_cast<int>(steps));

  // CSV and summary go to different streams so both stay machine-readable:
  // with --out the CSV lands in the file and the summary on stdout, without
  // it the CSV owns stdout and the summary moves to stderr.
  if (!o.out.empty() && o.out != "-") {
    write_output(o.out, r.csv);
    std::cout << canonical_dump(r.summary);
    std::cout.flush();
  } else {
    std::cout << r.csv;
    std::cout.flush();
    std::fputs(canonical_dump(r.summary).c_str(), stderr);
  }
  return r.pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// ccduality

struct cc_opts {
  std::string input = "-";
  std::string backend = "exact";
  double tol = 1e-9;
  std::string out = "-";
};

template <class S>
njson cc_connection_json(connection_kind ck, const cc_report<S>& r, double tol,
                         bool& all_pass) {
  njson j;
  j["connection"] = connection_kind_name(ck);
  j["h0"] = scalar_to_json(r.h0);
  j["h0_matches_cm_hamiltonian"] = r.h0_matches;
  njson rows = njson::array();
  for (std::size_t a = 0; a < r.h.size(); ++a) {
    njson row;
    row["pole"] = a;
    row["h"] = scalar_to_json(r.h[a]);
    row["expected_h"] = scalar_to_json(r.expected_h[a]);
    row["coupling_scaled_h"] = scalar_to_json(r.coupling_scaled_h[a]);
    row["c"] = scalar_to_json(r.c[a]);
    row["expected_c"] = scalar_to_json(r.expected_c[a]);
    rows.push_back(row);
  }
  j["per_pole"] = rows;
  j["identities_hold"] = r.identities_hold;
  j["reconstruction_residual"] = r.reconstruction_residual;
  const bool recon_ok = scalar_ops<S>::is_exact ? r.reconstruction_residual == 0.0
                                                : r.reconstruction_residual <= tol;
  j["pass"] = r.identities_hold && recon_ok;
  all_pass = all_pass && r.identities_hold && recon_ok;
  return j;
}

template <class S>
int run_ccduality_typed(const njson& in, const cc_opts& o) {
  const auto [k, x] = manybody_from_json<S>(in);
  if (k != model_kind::rational_cm)
    throw domain_violation("ccduality: input must be a rational_cm phase point");
  njson j;
  j["input_digest"] = content_digest(canonical_dump(in));
  bool all_pass = true;
  njson reports = njson::array();
  for (const connection_kind ck : {connection_kind::gaudin, connection_kind::schlesinger})
    reports.push_back(
        cc_connection_json(ck, verify_cc_identifications(ck, x), o.tol, all_pass));
  j["reports"] = reports;
  j["pass"] = all_pass;
  write_output(o.out, canonical_dump(j));
  return all_pass ? 0 : 1;
}

int run_ccduality(const cc_opts& o) {
  const njson in = parse_json(read_input(o.input));
  if (o.backend == "exact") return run_ccduality_typed<rat>(in, o);
  if (o.backend == "float") return run_ccduality_typed<cplx>(in, o);
  throw domain_violation("--backend must be exact or float");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"duality-lab: machine verification of dualities in classical integrable systems"};
  app.require_subcommand(1);

  std::vector<std::string> suite_choices = suite_names();
  suite_choices.push_back("all");
  const std::vector<std::string> backend_choices{"exact", "float"};

  verify_opts vo;
  CLI::App* verify = app.add_subcommand("verify", "Run a verification suite and emit a report");
  verify->add_option("--suite", vo.suite, "Suite name or 'all'")
      ->capture_default_str()
      ->check(CLI::IsMember(suite_choices));
  verify->add_option("--config", vo.config_file, "JSON config file (flags win over file)");
  verify->add_option("--seed", vo.seed, "Instance-generation seed")->capture_default_str();
  verify->add_option("--trials", vo.trials, "Trials per check (0 = per-check default)")
      ->capture_default_str();
  verify->add_option("--n", vo.n_max, "Matrix-size cap (0 = suite default)");
  verify->add_option("--m", vo.m_max, "Pole-count cap (0 = suite default)");
  verify->add_option("--backend", vo.backend, "Row filter: exact or float")
      ->check(CLI::IsMember(backend_choices));
  verify->add_option("--tol", vo.tol, "Tolerance override for float rows (0 = defaults)");
  verify->add_option("--out", vo.out, "Report destination ('-' = stdout)")
      ->capture_default_str();
  verify->add_option("--format", vo.format, "Report format")
      ->capture_default_str()
      ->check(CLI::IsMember({"json", "csv"}));

  gen_opts go;
  CLI::App* gen = app.add_subcommand("gen", "Generate a deterministic instance descriptor");
  gen->add_option("--kind", go.kind,
                  "rational_cm | trig_cms | rational_rs | trig_rs | rational_gaudin | "
                  "trig_gaudin_reduced | xxx_chain | xxz_chain | connection")
      ->required();
  gen->add_option("--n", go.n, "Particle count / matrix size")->capture_default_str();
  gen->add_option("--m", go.m, "Pole count (multi-pole kinds only)")->capture_default_str();
  gen->add_option("--seed", go.seed, "Generation seed")->capture_default_str();
  gen->add_option("--out", go.out, "Descriptor destination ('-' = stdout)")
      ->capture_default_str();

  map_opts mo;
  CLI::App* map = app.add_subcommand(
      "map", "Position-momentum duality map on a many-body descriptor");
  map->add_option("input", mo.input, "Descriptor file ('-' = stdin)")->capture_default_str();
  map->add_option("--tol", mo.tol, "Reconstruction tolerance")->capture_default_str();
  map->add_option("--out", mo.out, "Dual descriptor destination")->capture_default_str();

  dualize_opts dzo;
  CLI::App* dualize_cmd = app.add_subcommand(
      "dualize", "Spectral twist<->pole swap on a multi-pole Lax descriptor");
  dualize_cmd->add_option("input", dzo.input, "Descriptor file ('-' = stdin)")
      ->capture_default_str();
  dualize_cmd->add_option("--direction", dzo.direction, "Duality family")
      ->required()
      ->check(CLI::IsMember({"gaudin", "tgaudin-xxx", "xxz"}));
  dualize_cmd->add_option("--backend", dzo.backend, "exact or float")
      ->capture_default_str()
      ->check(CLI::IsMember(backend_choices));
  dualize_cmd->add_option("--tol", dzo.tol, "Curve-match tolerance (float backend)")
      ->capture_default_str();
  dualize_cmd->add_option("--out", dzo.out, "Output destination")->capture_default_str();

  curve_opts co;
  CLI::App* curve = app.add_subcommand(
      "curve", "Cleared bivariate spectral-curve coefficients of a descriptor");
  curve->add_option("input", co.input, "Descriptor file ('-' = stdin)")
      ->capture_default_str();
  curve->add_option("--backend", co.backend, "exact or float")
      ->capture_default_str()
      ->check(CLI::IsMember(backend_choices));
  curve->add_option("--out", co.out, "Output destination")->capture_default_str();

  flow_opts fo;
  CLI::App* flow = app.add_subcommand(
      "flow", "Integrate a Hamiltonian flow and track conserved quantities");
  flow->add_option("--model", fo.model, "Many-body or connection descriptor file")
      ->required();
  flow->add_option("--t-end", fo.t_end, "Integration time")->capture_default_str();
  flow->add_option("--dt", fo.dt, "Step size")->capture_default_str();
  flow->add_option("--flow", fo.flow, "Flow index (pole index for connections)")
      ->capture_default_str();
  flow->add_option("--tol", fo.tol, "Maximum admissible invariant drift")
      ->capture_default_str();
  flow->add_option("--out", fo.out, "CSV destination (summary JSON then on stdout)");

  cc_opts cco;
  CLI::App* cc = app.add_subcommand(
      "ccduality", "Quadratic-expansion identifications of a rational CM point");
  cc->add_option("input", cco.input, "Phase-point descriptor file ('-' = stdin)")
      ->capture_default_str();
  cc->add_option("--backend", cco.backend, "exact or float")
      ->capture_default_str()
      ->check(CLI::IsMember(backend_choices));
  cc->add_option("--tol", cco.tol, "Reconstruction tolerance (float backend)")
      ->capture_default_str();
  cc->add_option("--out", cco.out, "Report destination")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) return run_verify(*verify, vo);
    if (gen->parsed()) return run_gen(go);
    if (map->parsed()) return run_map(mo);
    if (dualize_cmd->parsed()) return run_dualize(dzo);
    if (curve->parsed()) return run_curve(co);
    if (flow->parsed()) return run_flow(fo);
    if (cc->parsed()) return run_ccduality(cco);
  } catch (const numeric_failure& e) {
    std::fprintf(stderr, "numeric failure: %s\n", e.what());
    return 1;
  } catch (const domain_violation& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
