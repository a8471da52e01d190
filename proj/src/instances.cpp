#include "duality/instances.hpp"

#include <cstdio>

namespace duality {

namespace {

constexpr int kMaxRejections = 1000;

[[noreturn]] void give_up(const char* what) {
  throw domain_violation(std::string("instance generation: ") + what +
                         " not attainable within the rejection budget");
}

}  // namespace

long instance_rng::ival(long lo, long hi) {
  if (hi < lo) throw domain_violation("instance_rng: empty integer range");
  const std::uint64_t width = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(eng_() % width);
}

rat instance_rng::draw_real(long span, long den_max) {
  if (span < 1 || den_max < 1) throw domain_violation("instance_rng: bad bounds");
  return rat::fraction(ival(-span, span), ival(1, den_max));
}

rat instance_rng::draw(long span, long den_max) {
  const rat re = draw_real(span, den_max);
  const rat im = rat::fraction(ival(-3, 3), ival(1, den_max));
  return rat(re.re(), im.re());
}

rat instance_rng::draw_nonzero(long span, long den_max) {
  for (int tries = 0; tries < kMaxRejections; ++tries) {
    const rat v = draw(span, den_max);
    if (!v.is_zero()) return v;
  }
  give_up("nonzero entry");
}

std::vector<rat> instance_rng::draw_distinct(std::size_t n, bool require_nonzero,
                                             long span, long den_max) {
  std::vector<rat> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    bool placed = false;
    for (int tries = 0; tries < kMaxRejections && !placed; ++tries) {
      const rat v = require_nonzero ? draw_nonzero(span, den_max) : draw(span, den_max);
      bool fresh = true;
      for (const rat& u : out)
        if (u == v) fresh = false;
      if (fresh) {
        out.push_back(v);
        placed = true;
      }
    }
    if (!placed) give_up("pairwise-distinct values");
  }
  return out;
}

matrix<rat> instance_rng::draw_matrix(std::size_t r, std::size_t c, long span,
                                      long den_max) {
  matrix<rat> m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = draw(span, den_max);
  return m;
}

matrix<rat> instance_rng::draw_matrix_nonzero(std::size_t r, std::size_t c, long span,
                                              long den_max) {
  matrix<rat> m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = draw_nonzero(span, den_max);
  return m;
}

phase_point<rat> generate_manybody(model_kind k, std::size_t n, instance_rng& rng) {
  if (n == 0) throw domain_violation("generate_manybody: need at least one particle");
  for (int tries = 0; tries < kMaxRejections; ++tries) {
    phase_point<rat> x;
    x.q = rng.draw_distinct(n, position_multiplicative(k));
    x.p.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      x.p[i] = momentum_multiplicative(k) ? rng.draw_nonzero() : rng.draw();
    x.nu = rng.draw_nonzero(5, 6);
    if (coupling_multiplicative(k) && x.nu == rat(1)) continue;
    try {
      validate_phase_point(k, x);
      return x;
    } catch (const domain_violation&) {
      // kind-specific denominator hit; redraw
    }
  }
  give_up("generic phase point");
}

multi_pole_lax<rat> generate_multipole(lax_kind k, std::size_t n, std::size_t m,
                                       instance_rng& rng) {
  if (n == 0 || m == 0) throw domain_violation("generate_multipole: empty shape");
  multi_pole_lax<rat> out;
  out.kind = k;
  out.twist = matrix<rat>::diagonal(rng.draw_distinct(n, true));
  out.poles = rng.draw_distinct(m, true);
  out.xi = rng.draw_matrix_nonzero(n, m);
  out.eta = rng.draw_matrix_nonzero(m, n);
  validate_lax(out);
  return out;
}

pole_connection<rat> generate_connection(std::size_t n, std::size_t m,
                                         instance_rng& rng) {
  if (n == 0 || m == 0) throw domain_violation("generate_connection: empty shape");
  pole_connection<rat> out;
  out.base = rng.draw_matrix(n, n);
  out.poles = rng.draw_distinct(m, false);
  out.residues.reserve(m);
  for (std::size_t a = 0; a < m; ++a) out.residues.push_back(rng.draw_matrix(n, n));
  validate_connection(out);
  return out;
}

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (const unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string content_digest(const std::string& text) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(text)));
  return std::string(buf);
}

}  // namespace duality
