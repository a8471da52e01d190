#pragma once
// Named verification suites: randomized batches of the library's identity
// checks with deterministic per-trial instance generation and canonical
// machine-readable reports. A fixed config yields a byte-identical report
// (wall-clock time is measured but never serialized), and trials may execute
// concurrently without affecting row order or row content.

#include <cstdint>
#include <string>
#include <vector>

#include "duality/instances.hpp"

namespace duality {

enum class check_backend { exact, floating };

inline const char* backend_name(check_backend b) {
  return b == check_backend::exact ? "exact" : "float";
}

struct suite_config {
  std::string suite = "all";  // one of suite_names() or "all"
  std::uint64_t seed = 42;
  int trials = 0;         // 0 = per-check defaults
  std::size_t n_max = 0;  // 0 = suite default matrix-size cap
  std::size_t m_max = 0;  // 0 = suite default pole-count cap
  std::string backend;    // "" = all rows, "exact"/"float" = filter
  double tol = 0.0;       // 0 = per-check defaults (float rows only)
};

struct check_row {
  std::string check_id;
  std::string instance_digest;  // content hash of the generating descriptor
  check_backend backend = check_backend::exact;
  double residual = 0.0;
  double tolerance = 0.0;  // 0 marks a bit-exact requirement
  bool pass = false;
  std::string note;  // error text when the check raised instead of finishing
};

struct suite_report {
  suite_config config;
  std::vector<check_row> rows;  // ordered by (check_id registration, trial)
  std::size_t passed = 0;
  std::size_t failed = 0;
  bool all_pass = false;
  double wall_ms = 0.0;  // measured; excluded from serialized forms
};

// The nine suite names in canonical order (excluding the "all" alias).
const std::vector<std::string>& suite_names();

// Runs the named suite (or every suite for "all"). Unknown suite names,
// malformed configs, and unsupported backend filters raise domain_violation.
// Concurrency is capped by the DUALITY_LAB_THREADS environment variable.
suite_report run_suite(const suite_config& cfg);

// Canonical serializations; byte-identical across runs for equal configs.
std::string report_json(const suite_report& rep);
std::string report_csv(const suite_report& rep);

}  // namespace duality
