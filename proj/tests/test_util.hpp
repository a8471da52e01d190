#pragma once
// Shared helpers for the unit tests: a deterministic small-rational source
// and convenience constructors.

#include <cstdint>
#include <random>
#include <vector>

#include "duality/matrix.hpp"

namespace test_util {

using duality::bigq;
using duality::rat;

inline rat fr(long n, long d) { return rat::fraction(n, d); }

struct test_rng {
  std::mt19937_64 eng;
  explicit test_rng(std::uint64_t seed) : eng(seed) {}
  long ival(long lo, long hi) {
    return lo + static_cast<long>(eng() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  rat next(long span = 9, long den = 7) {
    return rat(bigq(ival(-span, span), ival(1, den)),
               bigq(ival(-span, span), ival(1, den)));
  }
  rat next_real(long span = 9, long den = 7) {
    return rat(bigq(ival(-span, span), ival(1, den)));
  }
  rat next_nonzero(long span = 9, long den = 7) {
    for (;;) {
      rat r = next(span, den);
      if (!r.is_zero()) return r;
    }
  }
  std::vector<rat> distinct(std::size_t n, bool nonzero, long span = 9, long den = 7) {
    std::vector<rat> out;
    while (out.size() < n) {
      rat c = next(span, den);
      if (nonzero && c.is_zero()) continue;
      bool dup = false;
      for (const auto& x : out)
        if (x == c) dup = true;
      if (!dup) out.push_back(c);
    }
    return out;
  }
  duality::matrix<rat> mat(std::size_t r, std::size_t c, long span = 9, long den = 7) {
    duality::matrix<rat> m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = next(span, den);
    return m;
  }
};

}  // namespace test_util
