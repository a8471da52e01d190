#pragma once
// Scalar backends: exact Gaussian rationals (for algebraic identities that
// must hold bit-exactly) and complex doubles (for eigendecomposition paths).

#include <boost/multiprecision/gmp.hpp>

#include <complex>
#include <stdexcept>
#include <string>

namespace duality {

using bigq = boost::multiprecision::mpq_rational;
using cplx = std::complex<double>;

// Error taxonomy.
//   domain_violation: the input breaks a documented precondition (duplicate
//     positions, zero coupling, malformed descriptors, non-generic data).
//   numeric_failure: a well-posed computation failed a tolerance gate
//     (degenerate float spectrum, pivot underflow, cross-check mismatch).
struct duality_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct domain_violation : duality_error {
  using duality_error::duality_error;
};
struct numeric_failure : duality_error {
  using duality_error::duality_error;
};

// Gaussian rational: re + im*i with exact rational components.
class rat {
 public:
  rat() : re_(0), im_(0) {}
  rat(int n) : re_(n), im_(0) {}          // NOLINT(google-explicit-constructor)
  rat(long n) : re_(n), im_(0) {}         // NOLINT(google-explicit-constructor)
  rat(const bigq& re) : re_(re), im_(0) {}  // NOLINT(google-explicit-constructor)
  rat(bigq re, bigq im) : re_(std::move(re)), im_(std::move(im)) {}

  static rat fraction(long num, long den) {
    if (den == 0) throw domain_violation("rat: zero denominator");
    return rat(bigq(num, den));
  }
  static rat gauss(long re_num, long re_den, long im_num, long im_den) {
    if (re_den == 0 || im_den == 0) throw domain_violation("rat: zero denominator");
    return rat(bigq(re_num, re_den), bigq(im_num, im_den));
  }

  const bigq& re() const { return re_; }
  const bigq& im() const { return im_; }
  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_real() const { return im_ == 0; }

  rat conj() const { return rat(re_, -im_); }
  bigq abs2() const { return re_ * re_ + im_ * im_; }

  cplx to_cplx() const {
    return cplx(re_.convert_to<double>(), im_.convert_to<double>());
  }

  // Canonical text form: "p/q" (reduced, boost style) or "p/q+r/s*i".
  std::string str() const {
    if (im_ == 0) return re_.str();
    std::string s = re_.str();
    s += (im_ > 0) ? "+" : "-";
    bigq a = boost::multiprecision::abs(im_);
    s += a.str();
    s += "*i";
    return s;
  }

  rat operator-() const { return rat(-re_, -im_); }
  rat& operator+=(const rat& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  rat& operator-=(const rat& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  rat& operator*=(const rat& o) {
    bigq r = re_ * o.re_ - im_ * o.im_;
    bigq i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }
  rat& operator/=(const rat& o) {
    bigq d = o.abs2();
    if (d == 0) throw domain_violation("rat: division by zero");
    bigq r = (re_ * o.re_ + im_ * o.im_) / d;
    bigq i = (im_ * o.re_ - re_ * o.im_) / d;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }

  friend rat operator+(rat a, const rat& b) { return a += b; }
  friend rat operator-(rat a, const rat& b) { return a -= b; }
  friend rat operator*(rat a, const rat& b) { return a *= b; }
  friend rat operator/(rat a, const rat& b) { return a /= b; }
  friend bool operator==(const rat& a, const rat& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const rat& a, const rat& b) { return !(a == b); }

 private:
  bigq re_, im_;
};

inline rat conj_scalar(const rat& x) { return x.conj(); }
inline cplx conj_scalar(const cplx& x) { return std::conj(x); }

// Uniform operations a generic algorithm needs from either backend.
template <class S>
struct scalar_ops;

template <>
struct scalar_ops<rat> {
  static constexpr bool is_exact = true;
  static rat zero() { return rat(0); }
  static rat one() { return rat(1); }
  static rat from_int(long n) { return rat(n); }
  static bool is_zero(const rat& x) { return x.is_zero(); }
  static cplx to_cplx(const rat& x) { return x.to_cplx(); }
  static double approx_abs(const rat& x) { return std::abs(x.to_cplx()); }
};

template <>
struct scalar_ops<cplx> {
  static constexpr bool is_exact = false;
  static cplx zero() { return cplx(0.0, 0.0); }
  static cplx one() { return cplx(1.0, 0.0); }
  static cplx from_int(long n) { return cplx(static_cast<double>(n), 0.0); }
  static bool is_zero(const cplx& x) { return x == cplx(0.0, 0.0); }
  static cplx to_cplx(const cplx& x) { return x; }
  static double approx_abs(const cplx& x) { return std::abs(x); }
};

}  // namespace duality
