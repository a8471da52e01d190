#pragma once
// Dense matrices over an arbitrary scalar backend (exact Gaussian rationals
// or complex doubles), with the elimination-based kernels (inverse,
// determinant, rank) shared by both backends.

#include <cstddef>
#include <utility>
#include <vector>

#include "duality/scalar.hpp"

namespace duality {

template <class S>
class matrix {
 public:
  matrix() : rows_(0), cols_(0) {}
  matrix(std::size_t r, std::size_t c)
      : rows_(r), cols_(c), a_(r * c, scalar_ops<S>::zero()) {}
  matrix(std::size_t r, std::size_t c, std::vector<S> data)
      : rows_(r), cols_(c), a_(std::move(data)) {
    if (a_.size() != rows_ * cols_)
      throw domain_violation("matrix: data size mismatch");
  }

  static matrix identity(std::size_t n) {
    matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = scalar_ops<S>::one();
    return m;
  }
  static matrix ones(std::size_t r, std::size_t c) {
    matrix m(r, c);
    for (auto& x : m.a_) x = scalar_ops<S>::one();
    return m;
  }
  static matrix diagonal(const std::vector<S>& d) {
    matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }
  // Column vector times row vector.
  static matrix outer(const std::vector<S>& u, const std::vector<S>& v) {
    matrix m(u.size(), v.size());
    for (std::size_t i = 0; i < u.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * v[j];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  S& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const S& operator()(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }

  matrix& operator+=(const matrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
  }
  matrix& operator-=(const matrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
  }
  matrix& operator*=(const S& s) {
    for (auto& x : a_) x *= s;
    return *this;
  }
  friend matrix operator+(matrix a, const matrix& b) { return a += b; }
  friend matrix operator-(matrix a, const matrix& b) { return a -= b; }
  friend matrix operator*(matrix a, const S& s) { return a *= s; }
  friend matrix operator*(const S& s, matrix a) { return a *= s; }
  matrix operator-() const {
    matrix m = *this;
    for (auto& x : m.a_) x = -x;
    return m;
  }

  friend matrix operator*(const matrix& a, const matrix& b) {
    if (a.cols_ != b.rows_) throw domain_violation("matrix: product shape mismatch");
    matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const S& aik = a(i, k);
        if (scalar_ops<S>::is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend bool operator==(const matrix& a, const matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }
  friend bool operator!=(const matrix& a, const matrix& b) { return !(a == b); }

  matrix transpose() const {
    matrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  S trace() const {
    require_square();
    S t = scalar_ops<S>::zero();
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  std::vector<S> diag() const {
    require_square();
    std::vector<S> d(rows_);
    for (std::size_t i = 0; i < rows_; ++i) d[i] = (*this)(i, i);
    return d;
  }
  std::vector<S> row(std::size_t i) const {
    std::vector<S> v(cols_);
    for (std::size_t j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
    return v;
  }
  std::vector<S> col(std::size_t j) const {
    std::vector<S> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& x : a_) m = std::max(m, scalar_ops<S>::approx_abs(x));
    return m;
  }
  bool is_zero() const {
    for (const auto& x : a_)
      if (!scalar_ops<S>::is_zero(x)) return false;
    return true;
  }

  // Gauss-Jordan inverse. Exact backend: any nonzero pivot is valid; float
  // backend: partial pivoting with an underflow gate.
  matrix inverse() const {
    require_square();
    const std::size_t n = rows_;
    matrix a = *this;
    matrix inv = identity(n);
    const double scale = std::max(1.0, max_abs());
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t piv = pivot_row(a, c, c);
      if constexpr (scalar_ops<S>::is_exact) {
        if (piv == n) throw domain_violation("matrix: singular (exact)");
      } else {
        if (piv == n || scalar_ops<S>::approx_abs(a(piv, c)) <= 1e-14 * scale)
          throw numeric_failure("matrix: singular to working precision");
      }
      a.swap_rows(c, piv);
      inv.swap_rows(c, piv);
      S d = a(c, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(c, j) /= d;
        inv(c, j) /= d;
      }
      for (std::size_t r = 0; r < n; ++r) {
        if (r == c) continue;
        S f = a(r, c);
        if (scalar_ops<S>::is_zero(f)) continue;
        for (std::size_t j = 0; j < n; ++j) {
          a(r, j) -= f * a(c, j);
          inv(r, j) -= f * inv(c, j);
        }
      }
    }
    return inv;
  }

  S determinant() const {
    require_square();
    const std::size_t n = rows_;
    matrix a = *this;
    S det = scalar_ops<S>::one();
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t piv = pivot_row(a, c, c);
      if (piv == n) return scalar_ops<S>::zero();
      if (piv != c) {
        a.swap_rows(c, piv);
        det = -det;
      }
      det *= a(c, c);
      for (std::size_t r = c + 1; r < n; ++r) {
        S f = a(r, c) / a(c, c);
        if (scalar_ops<S>::is_zero(f)) continue;
        for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
      }
    }
    return det;
  }

  // Row rank. Exact backend: exact pivots; float backend: pivots above
  // rel_tol * max_abs count as nonzero.
  std::size_t rank(double rel_tol = 1e-9) const {
    matrix a = *this;
    const double thresh = rel_tol * std::max(1.0, max_abs());
    std::size_t rk = 0;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t piv = rows_;
      if constexpr (scalar_ops<S>::is_exact) {
        piv = pivot_row(a, c, r);
      } else {
        double best = thresh;
        for (std::size_t i = r; i < rows_; ++i) {
          double v = scalar_ops<S>::approx_abs(a(i, c));
          if (v > best) {
            best = v;
            piv = i;
          }
        }
      }
      if (piv == rows_) continue;
      a.swap_rows(r, piv);
      for (std::size_t i = r + 1; i < rows_; ++i) {
        S f = a(i, c) / a(r, c);
        if (scalar_ops<S>::is_zero(f)) continue;
        for (std::size_t j = c; j < cols_; ++j) a(i, j) -= f * a(r, j);
      }
      ++rk;
      ++r;
    }
    return rk;
  }

  static matrix kron(const matrix& a, const matrix& b) {
    matrix m(a.rows_ * b.rows_, a.cols_ * b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) {
        if (scalar_ops<S>::is_zero(a(i, j))) continue;
        for (std::size_t k = 0; k < b.rows_; ++k)
          for (std::size_t l = 0; l < b.cols_; ++l)
            m(i * b.rows_ + k, j * b.cols_ + l) = a(i, j) * b(k, l);
      }
    return m;
  }

 private:
  void require_square() const {
    if (!square()) throw domain_violation("matrix: square matrix required");
  }
  void require_same_shape(const matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw domain_violation("matrix: shape mismatch");
  }
  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < cols_; ++c)
      std::swap((*this)(i, c), (*this)(j, c));
  }
  // First usable pivot at/below row `from` in column c: exact backend takes
  // the first nonzero entry, float backend the largest magnitude.
  static std::size_t pivot_row(const matrix& a, std::size_t c, std::size_t from) {
    if constexpr (scalar_ops<S>::is_exact) {
      for (std::size_t r = from; r < a.rows_; ++r)
        if (!scalar_ops<S>::is_zero(a(r, c))) return r;
      return a.rows_;
    } else {
      std::size_t best = a.rows_;
      double bv = 0.0;
      for (std::size_t r = from; r < a.rows_; ++r) {
        double v = scalar_ops<S>::approx_abs(a(r, c));
        if (v > bv) {
          bv = v;
          best = r;
        }
      }
      return best;
    }
  }

  std::size_t rows_, cols_;
  std::vector<S> a_;
};

// Largest entry of a - b in approximate absolute value.
template <class S>
double distance(const matrix<S>& a, const matrix<S>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw domain_violation("distance: shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      m = std::max(m, scalar_ops<S>::approx_abs(a(i, j) - b(i, j)));
  return m;
}

// distance(a, b) relative to max(1, |b|).
template <class S>
double rel_distance(const matrix<S>& a, const matrix<S>& b) {
  return distance(a, b) / std::max(1.0, b.max_abs());
}

template <class S>
matrix<cplx> to_cplx_matrix(const matrix<S>& a) {
  matrix<cplx> m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      m(i, j) = scalar_ops<S>::to_cplx(a(i, j));
  return m;
}

template <class S>
std::vector<cplx> to_cplx_vector(const std::vector<S>& v) {
  std::vector<cplx> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = scalar_ops<S>::to_cplx(v[i]);
  return out;
}

}  // namespace duality
