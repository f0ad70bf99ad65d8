#pragma once

#include <complex>
#include <string>

#include "asymval/numerics/real.hpp"

namespace asymval {

/// Complex ball: every value within `rad` of `re + i im`.
///
/// Centres are computed round-to-nearest at the ball's working precision; the
/// rounding error of each operation is folded into the radius, which is always
/// rounded up.
class Ball {
 public:
  static constexpr mpfr_prec_t kRadBits = 64;

  explicit Ball(mpfr_prec_t bits = 128);
  Ball(Real re, Real im, Real rad);
  Ball(double re, double im, mpfr_prec_t bits);
  static Ball exact(const Real& re, const Real& im, mpfr_prec_t bits);
  static Ball from_mpq(const mpq_class& re, const mpq_class& im, mpfr_prec_t bits);
  static Ball from_real(const Real& x, mpfr_prec_t bits) { return exact(x, Real(0L, bits), bits); }
  /// The disc {|z - c| <= r}.
  static Ball disc(const Real& re, const Real& im, const Real& r, mpfr_prec_t bits);

  const Real& re() const { return re_; }
  const Real& im() const { return im_; }
  const Real& rad() const { return rad_; }
  mpfr_prec_t bits() const { return re_.bits(); }

  /// Upper bound on max |z| over the ball.
  Real abs_upper() const;
  /// Lower bound on min |z| over the ball (0 if the ball reaches the origin).
  Real abs_lower() const;
  /// Upper bound on |centre|.
  Real center_abs_upper() const;

  bool contains(const std::complex<double>& z) const;
  bool contains(const Ball& inner) const;
  bool overlaps(const Ball& other) const;
  bool is_exact() const { return rad_.is_zero(); }

  Ball with_bits(mpfr_prec_t bits) const;
  Ball inflated(const Real& extra) const;
  Ball center() const;
  std::complex<double> mid() const;
  std::string str(int digits = 10) const;

  friend Ball operator+(const Ball& a, const Ball& b);
  friend Ball operator-(const Ball& a, const Ball& b);
  friend Ball operator*(const Ball& a, const Ball& b);
  friend Ball operator-(const Ball& a);

 private:
  Real re_;
  Real im_;
  Real rad_;

  void add_rounding(const Real& scale);
};

Ball scale(const Ball& a, const Real& s);
Ball scale_q(const Ball& a, const mpq_class& q);
Ball mul_i(const Ball& a);
Ball conj(const Ball& a);
Ball sqr(const Ball& a);
Ball pow_ui(const Ball& a, unsigned long n);
Ball exp(const Ball& a);
/// Ball of e^{i q pi}.
Ball unit_root(const mpq_class& q, mpfr_prec_t bits);
Ball hull(const Ball& a, const Ball& b);

}  // namespace asymval
