#pragma once
// Deterministic generators for random-but-generic exact instances. Every
// entry is a bounded Gaussian rational (numerators and denominators well
// below 97), genericity constraints (pairwise-distinct positions, nonzero
// multiplicative data, distinct twist eigenvalues and poles) are enforced by
// rejection sampling, and a fixed seed fully determines the output. The
// content digest of an instance's canonical JSON form ties report rows back
// to reproducible inputs.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "duality/cc_duality.hpp"
#include "duality/manybody.hpp"
#include "duality/spectral_models.hpp"

namespace duality {

// Bounded random rationals from a seeded engine. Rejection loops are capped;
// exceeding the cap means the requested ranges cannot express the required
// genericity and raises domain_violation.
class instance_rng {
 public:
  explicit instance_rng(std::uint64_t seed) : eng_(seed) {}

  long ival(long lo, long hi);

  // num/den with |num| <= span and 1 <= den <= den_max; zero allowed.
  rat draw_real(long span = 12, long den_max = 8);
  // Real part as draw_real, small imaginary part (|num| <= 3, den <= den_max).
  rat draw(long span = 12, long den_max = 8);
  rat draw_nonzero(long span = 12, long den_max = 8);
  std::vector<rat> draw_distinct(std::size_t n, bool require_nonzero,
                                 long span = 12, long den_max = 8);
  matrix<rat> draw_matrix(std::size_t r, std::size_t c, long span = 12,
                          long den_max = 8);
  matrix<rat> draw_matrix_nonzero(std::size_t r, std::size_t c, long span = 12,
                                  long den_max = 8);

 private:
  std::mt19937_64 eng_;
};

// Generic phase point in the kind's natural coordinates; always passes
// validate_phase_point.
phase_point<rat> generate_manybody(model_kind k, std::size_t n, instance_rng& rng);

// Generic multi-pole Lax model: diagonal twist with distinct nonzero
// eigenvalues, distinct nonzero poles, dense nonzero residue factors.
multi_pole_lax<rat> generate_multipole(lax_kind k, std::size_t n, std::size_t m,
                                       instance_rng& rng);

// Generic dense pole connection: arbitrary residues, distinct poles.
pole_connection<rat> generate_connection(std::size_t n, std::size_t m,
                                         instance_rng& rng);

// FNV-1a 64-bit hash; content_digest renders it as 16 lowercase hex digits.
std::uint64_t fnv1a64(const std::string& text);
std::string content_digest(const std::string& text);

}  // namespace duality
