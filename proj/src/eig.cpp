#include "duality/eig.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <numeric>

namespace duality {

namespace {

Eigen::MatrixXcd to_eigen(const matrix<cplx>& a) {
  Eigen::MatrixXcd m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  return m;
}

bool lex_less(const cplx& a, const cplx& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace

std::vector<cplx> eig_values(const matrix<cplx>& a) {
  if (!a.square()) throw domain_violation("eig_values: square matrix required");
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(to_eigen(a), false);
  if (es.info() != Eigen::Success)
    throw numeric_failure("eig_values: eigensolver did not converge");
  std::vector<cplx> vals(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) vals[i] = es.eigenvalues()(i);
  std::sort(vals.begin(), vals.end(), lex_less);
  return vals;
}

eig_result eig_sorted(const matrix<cplx>& a, double rtol, double sep_tol) {
  if (!a.square()) throw domain_violation("eig_sorted: square matrix required");
  const std::size_t n = a.rows();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(to_eigen(a), true);
  if (es.info() != Eigen::Success)
    throw numeric_failure("eig_sorted: eigensolver did not converge");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return lex_less(es.eigenvalues()(i), es.eigenvalues()(j));
  });

  eig_result r;
  r.values.resize(n);
  for (std::size_t k = 0; k < n; ++k) r.values[k] = es.eigenvalues()(order[k]);

  // The sorted order is only meaningful when the spectrum is simple.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(r.values[i] - r.values[j]) <= sep_tol)
        throw numeric_failure("eig_sorted: degenerate spectrum (separation below tolerance)");

  r.vectors = matrix<cplx>(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    Eigen::VectorXcd v = es.eigenvectors().col(order[k]);
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(v(i)));
    if (m == 0.0) throw numeric_failure("eig_sorted: zero eigenvector column");
    std::size_t first = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (std::abs(v(i)) >= m * (1.0 - 1e-12)) {
        first = i;
        break;
      }
    cplx pivot = v(first);
    for (std::size_t i = 0; i < n; ++i) r.vectors(i, k) = v(i) / pivot;
  }

  // Reconstruction gate: A V == V diag(values) within rtol * max(|A|, 1).
  const matrix<cplx> lhs = a * r.vectors;
  const matrix<cplx> rhs = r.vectors * matrix<cplx>::diagonal(r.values);
  const double scale = std::max(a.max_abs(), 1.0);
  if (distance(lhs, rhs) > rtol * scale)
    throw numeric_failure("eig_sorted: reconstruction residual above tolerance");
  return r;
}

}  // namespace duality
