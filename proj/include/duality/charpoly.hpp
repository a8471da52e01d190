#pragma once
// Characteristic polynomial via the Faddeev-LeVerrier recurrence, which is
// division-free apart from exact divisions by integers and therefore stays
// inside the Gaussian-rational field on the exact backend.

#include <vector>

#include "duality/matrix.hpp"

namespace duality {

// Coefficients of det(lambda*I - A) in descending powers:
// out[0]*lambda^n + out[1]*lambda^(n-1) + ... + out[n], with out[0] = 1.
template <class S>
std::vector<S> char_poly(const matrix<S>& a) {
  if (!a.square()) throw domain_violation("char_poly: square matrix required");
  const std::size_t n = a.rows();
  std::vector<S> c(n + 1, scalar_ops<S>::zero());
  c[0] = scalar_ops<S>::one();
  matrix<S> m = matrix<S>::identity(n);  // M_1 = I
  for (std::size_t k = 1; k <= n; ++k) {
    if (k > 1) {
      // M_k = A * M_{k-1} + c_{k-1} * I
      m = a * m;
      for (std::size_t i = 0; i < n; ++i) m(i, i) += c[k - 1];
    }
    S t = (a * m).trace();
    c[k] = -(t / scalar_ops<S>::from_int(static_cast<long>(k)));
  }
  return c;
}

// Horner evaluation of a dense polynomial given in descending powers.
template <class S>
S poly_eval(const std::vector<S>& coeffs, const S& x) {
  S acc = scalar_ops<S>::zero();
  for (const auto& c : coeffs) acc = acc * x + c;
  return acc;
}

// Multiplies a polynomial in ascending powers by the linear factor (x - root).
template <class S>
std::vector<S> poly_mul_linear(const std::vector<S>& a, const S& root) {
  std::vector<S> out(a.size() + 1, scalar_ops<S>::zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i + 1] += a[i];
    out[i] -= root * a[i];
  }
  return out;
}

// Monic polynomial prod_k (x - r_k) in ascending powers.
template <class S>
std::vector<S> poly_from_roots(const std::vector<S>& roots) {
  std::vector<S> out{scalar_ops<S>::one()};
  for (const auto& r : roots) out = poly_mul_linear(out, r);
  return out;
}

}  // namespace duality
