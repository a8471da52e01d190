#pragma once
// Finite many-body integrable models of Calogero-Moser and
// Ruijsenaars-Schneider type: Lax matrices in natural coordinates, the
// moment-map identities they satisfy exactly, closed-form Hamiltonians, and
// the rank-one spectrum probe for the trigonometric RS model.
//
// Natural coordinates stored per kind (so that every Lax entry is a rational
// function of the stored data and exact arithmetic applies):
//   rational_cm : q additive, p additive, coupling nu additive
//   trig_cms    : q holds w = e^q (multiplicative), p additive, nu additive
//   rational_rs : q additive, p holds u = e^p (multiplicative), nu additive
//   trig_rs     : q holds w = e^q, p holds u = e^p, coupling holds t = e^{-nu}

#include <string>
#include <vector>

#include "duality/charpoly.hpp"
#include "duality/eig.hpp"
#include "duality/matrix.hpp"

namespace duality {

enum class model_kind { rational_cm, trig_cms, rational_rs, trig_rs };

inline const char* kind_name(model_kind k) {
  switch (k) {
    case model_kind::rational_cm: return "rational_cm";
    case model_kind::trig_cms: return "trig_cms";
    case model_kind::rational_rs: return "rational_rs";
    case model_kind::trig_rs: return "trig_rs";
  }
  throw domain_violation("kind_name: unknown model kind");
}

inline model_kind kind_from_name(const std::string& s) {
  if (s == "rational_cm") return model_kind::rational_cm;
  if (s == "trig_cms") return model_kind::trig_cms;
  if (s == "rational_rs") return model_kind::rational_rs;
  if (s == "trig_rs") return model_kind::trig_rs;
  throw domain_violation("kind_from_name: unknown model kind '" + s + "'");
}

inline bool position_multiplicative(model_kind k) {
  return k == model_kind::trig_cms || k == model_kind::trig_rs;
}
inline bool momentum_multiplicative(model_kind k) {
  return k == model_kind::rational_rs || k == model_kind::trig_rs;
}
inline bool coupling_multiplicative(model_kind k) {
  return k == model_kind::trig_rs;
}

template <class S>
struct phase_point {
  std::vector<S> q;  // positions in natural coordinates (see header comment)
  std::vector<S> p;  // momenta in natural coordinates
  S nu;              // coupling (t = e^{-nu} for trig_rs)
};

template <class S>
phase_point<cplx> to_cplx_point(const phase_point<S>& x) {
  return {to_cplx_vector(x.q), to_cplx_vector(x.p), scalar_ops<S>::to_cplx(x.nu)};
}

// Precondition checks shared by every operation: sizes agree, coupling and
// multiplicative coordinates are nonzero, positions are pairwise distinct,
// and kind-specific denominators cannot vanish. Exact comparisons only; the
// float generators are responsible for comfortable separations.
template <class S>
void validate_phase_point(model_kind k, const phase_point<S>& x) {
  const std::size_t n = x.q.size();
  if (n == 0) throw domain_violation("phase point: empty position vector");
  if (x.p.size() != n) throw domain_violation("phase point: size mismatch between q and p");
  if (scalar_ops<S>::is_zero(x.nu))
    throw domain_violation("phase point: coupling must be nonzero");
  const S one = scalar_ops<S>::one();
  if (k == model_kind::trig_rs && x.nu == one)
    throw domain_violation("phase point: trig_rs coupling t must differ from 1");
  for (std::size_t i = 0; i < n; ++i) {
    if (position_multiplicative(k) && scalar_ops<S>::is_zero(x.q[i]))
      throw domain_violation("phase point: multiplicative position must be nonzero");
    if (momentum_multiplicative(k) && scalar_ops<S>::is_zero(x.p[i]))
      throw domain_violation("phase point: multiplicative momentum must be nonzero");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (x.q[i] == x.q[j])
        throw domain_violation("phase point: positions must be pairwise distinct");
      if (k == model_kind::rational_rs && x.q[i] - x.q[j] + x.nu == scalar_ops<S>::zero())
        throw domain_violation("phase point: rational_rs requires q_i - q_j != -nu");
      if (k == model_kind::trig_rs && x.q[i] == x.nu * x.q[j])
        throw domain_violation("phase point: trig_rs requires w_i != t * w_j");
    }
}

// b_j = prod_{k != j} (q_j - q_k - nu) / (q_j - q_k)   (rational RS weights)
template <class S>
std::vector<S> rs_b_products(const std::vector<S>& q, const S& nu) {
  const std::size_t n = q.size();
  std::vector<S> b(n, scalar_ops<S>::one());
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      if (k == j) continue;
      b[j] *= (q[j] - q[k] - nu) / (q[j] - q[k]);
    }
  return b;
}

// c_j = prod_{k != j} (t w_j - w_k) / (w_j - w_k)   (trigonometric RS weights)
template <class S>
std::vector<S> rs_c_products(const std::vector<S>& w, const S& t) {
  const std::size_t n = w.size();
  std::vector<S> c(n, scalar_ops<S>::one());
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      if (k == j) continue;
      c[j] *= (t * w[j] - w[k]) / (w[j] - w[k]);
    }
  return c;
}

template <class S>
matrix<S> lax(model_kind k, const phase_point<S>& x) {
  validate_phase_point(k, x);
  const std::size_t n = x.q.size();
  matrix<S> L(n, n);
  switch (k) {
    case model_kind::rational_cm:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          L(i, j) = (i == j) ? x.p[i] : x.nu / (x.q[i] - x.q[j]);
      break;
    case model_kind::trig_cms:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          L(i, j) = (i == j) ? x.p[i] : x.nu * x.q[j] / (x.q[j] - x.q[i]);
      break;
    case model_kind::rational_rs: {
      const std::vector<S> b = rs_b_products(x.q, x.nu);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          L(i, j) = x.nu / (x.q[i] - x.q[j] + x.nu) * x.p[j] * b[j];
      break;
    }
    case model_kind::trig_rs: {
      const S one = scalar_ops<S>::one();
      const std::vector<S> c = rs_c_products(x.q, x.nu);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          L(i, j) = (one - x.nu) * x.q[i] / (x.q[i] - x.nu * x.q[j]) * x.p[j] * c[j];
      break;
    }
  }
  return L;
}

// Moment-map residual matrix; identically zero on valid phase points.
//   rational_cm : [Q, L] - nu (ones - I)
//   trig_cms    : L - W L W^{-1} - nu (ones - I)
//   rational_rs : nu L + [Q, L] - nu * ones * diag(L)
//   trig_rs     : L - t W^{-1} L W - (1 - t) * ones * diag(L)
template <class S>
matrix<S> moment_map(model_kind k, const phase_point<S>& x) {
  const matrix<S> L = lax(k, x);
  const std::size_t n = x.q.size();
  const matrix<S> Q = matrix<S>::diagonal(x.q);
  const matrix<S> O = matrix<S>::ones(n, n);
  const S one = scalar_ops<S>::one();
  switch (k) {
    case model_kind::rational_cm:
      return Q * L - L * Q - x.nu * (O - matrix<S>::identity(n));
    case model_kind::trig_cms:
      return L - Q * L * Q.inverse() - x.nu * (O - matrix<S>::identity(n));
    case model_kind::rational_rs:
      return x.nu * L + (Q * L - L * Q) - x.nu * (O * matrix<S>::diagonal(L.diag()));
    case model_kind::trig_rs:
      return L - x.nu * (Q.inverse() * L * Q) -
             (one - x.nu) * (O * matrix<S>::diagonal(L.diag()));
  }
  throw domain_violation("moment_map: unknown model kind");
}

template <class S>
double moment_map_residual(model_kind k, const phase_point<S>& x) {
  const matrix<S> r = moment_map(k, x);
  return r.max_abs() / std::max(1.0, lax(k, x).max_abs());
}

// Closed-form Hamiltonians. CM kinds: (1/2) tr L^2 in closed form; RS kinds:
// tr L = sum of u_j * (weight products).
template <class S>
S hamiltonian(model_kind k, const phase_point<S>& x) {
  validate_phase_point(k, x);
  const std::size_t n = x.q.size();
  S h = scalar_ops<S>::zero();
  const S half = scalar_ops<S>::one() / scalar_ops<S>::from_int(2);
  switch (k) {
    case model_kind::rational_cm: {
      for (std::size_t i = 0; i < n; ++i) h += half * x.p[i] * x.p[i];
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          S d = x.q[i] - x.q[j];
          h -= x.nu * x.nu / (d * d);
        }
      return h;
    }
    case model_kind::trig_cms: {
      for (std::size_t i = 0; i < n; ++i) h += half * x.p[i] * x.p[i];
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          S d = x.q[i] - x.q[j];
          h -= x.nu * x.nu * x.q[i] * x.q[j] / (d * d);
        }
      return h;
    }
    case model_kind::rational_rs: {
      const std::vector<S> b = rs_b_products(x.q, x.nu);
      for (std::size_t j = 0; j < n; ++j) h += x.p[j] * b[j];
      return h;
    }
    case model_kind::trig_rs: {
      const std::vector<S> c = rs_c_products(x.q, x.nu);
      for (std::size_t j = 0; j < n; ++j) h += x.p[j] * c[j];
      return h;
    }
  }
  throw domain_violation("hamiltonian: unknown model kind");
}

// Second conserved quantity for RS kinds: tr L^{-1}.
template <class S>
S rs_inverse_hamiltonian(model_kind k, const phase_point<S>& x) {
  if (k != model_kind::rational_rs && k != model_kind::trig_rs)
    throw domain_violation("rs_inverse_hamiltonian: RS kinds only");
  return lax(k, x).inverse().trace();
}

// Probe of the defining property of the trigonometric RS Lax matrix: the
// positive-power transfer matrix M = L W^{-1} L^{-1} W equals t*I plus a
// rank-one correction, so its spectrum is {t^{-(N-1)}, t, ..., t} and
// rank(M - t*I) == 1.
struct trs_spectrum_report {
  double spectrum_residual = 0.0;  // sorted eigenvalues vs predicted multiset
  long rank_defect = 0;            // rank(M - t*I) - 1; 0 for valid points
};

template <class S>
trs_spectrum_report trs_spectrum_check(const phase_point<S>& x) {
  validate_phase_point(model_kind::trig_rs, x);
  const std::size_t n = x.q.size();
  const matrix<S> L = lax(model_kind::trig_rs, x);
  const matrix<S> W = matrix<S>::diagonal(x.q);
  const matrix<S> M = L * W.inverse() * L.inverse() * W;

  matrix<S> shifted = M;
  for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= x.nu;
  trs_spectrum_report rep;
  rep.rank_defect = static_cast<long>(shifted.rank()) - 1;

  const cplx t = scalar_ops<S>::to_cplx(x.nu);
  std::vector<cplx> predicted(n, t);
  predicted[0] = std::pow(t, -static_cast<double>(n - 1));
  std::sort(predicted.begin(), predicted.end(), [](const cplx& a, const cplx& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  const std::vector<cplx> actual = eig_values(to_cplx_matrix(M));
  double scale = 1.0;
  for (const auto& v : predicted) scale = std::max(scale, std::abs(v));
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    worst = std::max(worst, std::abs(actual[i] - predicted[i]));
  rep.spectrum_residual = worst / scale;
  return rep;
}

}  // namespace duality
