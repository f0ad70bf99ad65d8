#include "asymval/numerics/ball.hpp"

#include <algorithm>
#include <sstream>

#include "asymval/errors.hpp"

namespace asymval {

namespace {

constexpr mpfr_prec_t kR = Ball::kRadBits;

Real rad_add(const Real& a, const Real& b) { return add(a, b, Round::Up, kR); }
Real rad_mul(const Real& a, const Real& b) { return mul(a, b, Round::Up, kR); }

bool fits(const mpq_class& q, mpfr_prec_t bits) {
  return mpz_popcount(q.get_den_mpz_t()) == 1 && mpz_sizeinbase(q.get_num_mpz_t(), 2) <= static_cast<size_t>(bits);
}

Real abs_sum_upper(const Real& re, const Real& im) {
  return add(abs(re), abs(im), Round::Up, kR);
}

}  // namespace

Ball::Ball(mpfr_prec_t bits) : re_(bits), im_(bits), rad_(kR) {}

Ball::Ball(Real re, Real im, Real rad) : re_(std::move(re)), im_(std::move(im)), rad_(rad.rounded(kR, Round::Up)) {
  if (im_.bits() != re_.bits()) im_ = im_.rounded(re_.bits(), Round::Nearest);
  if (rad_.sign() < 0 || rad_.is_nan()) throw InvalidArgument("negative ball radius");
}

Ball::Ball(double re, double im, mpfr_prec_t bits) : re_(re, bits), im_(im, bits), rad_(kR) {
  if (bits < 53) {
    // Doubles may not fit; widen by the representation error.
    add_rounding(abs_sum_upper(re_, im_));
  }
}

Ball Ball::exact(const Real& re, const Real& im, mpfr_prec_t bits) {
  Ball b(bits);
  mpfr_set(b.re_.raw(), re.raw(), MPFR_RNDN);
  mpfr_set(b.im_.raw(), im.raw(), MPFR_RNDN);
  if (re.bits() > bits || im.bits() > bits) b.add_rounding(abs_sum_upper(b.re_, b.im_));
  return b;
}

Ball Ball::from_mpq(const mpq_class& re, const mpq_class& im, mpfr_prec_t bits) {
  Ball b(bits);
  b.re_ = Real(re, bits, Round::Nearest);
  b.im_ = Real(im, bits, Round::Nearest);
  if (!fits(re, bits) || !fits(im, bits)) b.add_rounding(abs_sum_upper(b.re_, b.im_));
  return b;
}

Ball Ball::disc(const Real& re, const Real& im, const Real& r, mpfr_prec_t bits) {
  Ball b = exact(re, im, bits);
  b.rad_ = rad_add(b.rad_, r);
  return b;
}

void Ball::add_rounding(const Real& scale) {
  // Round-to-nearest error is at most 2^-p of the magnitude; doubled for slack.
  rad_ = rad_add(rad_, mul_2si(scale.rounded(kR, Round::Up), 1 - static_cast<long>(bits())));
}

Real Ball::center_abs_upper() const { return hypot(re_, im_, Round::Up, kR); }

Real Ball::abs_upper() const { return rad_add(center_abs_upper(), rad_); }

Real Ball::abs_lower() const {
  Real d = sub(hypot(re_, im_, Round::Down, kR), rad_, Round::Down, kR);
  return d.sign() < 0 ? Real(0L, kR) : d;
}

bool Ball::contains(const std::complex<double>& z) const {
  const mpfr_prec_t p = bits() + 64;
  Real dx = sub(Real(z.real(), p), re_, Round::Nearest, p);
  Real dy = sub(Real(z.imag(), p), im_, Round::Nearest, p);
  return hypot(dx, dy, Round::Down, p) <= rad_;
}

bool Ball::contains(const Ball& inner) const {
  const mpfr_prec_t p = std::max(bits(), inner.bits()) + 64;
  Real dx = sub(inner.re_, re_, Round::Nearest, p);
  Real dy = sub(inner.im_, im_, Round::Nearest, p);
  return add(hypot(dx, dy, Round::Up, kR), inner.rad_, Round::Up, kR) <= rad_;
}

bool Ball::overlaps(const Ball& other) const {
  const mpfr_prec_t p = std::max(bits(), other.bits()) + 64;
  Real dx = sub(other.re_, re_, Round::Nearest, p);
  Real dy = sub(other.im_, im_, Round::Nearest, p);
  return hypot(dx, dy, Round::Down, kR) <= rad_add(rad_, other.rad_);
}

Ball Ball::with_bits(mpfr_prec_t bits) const {
  Ball b = exact(re_, im_, bits);
  b.rad_ = rad_add(b.rad_, rad_);
  return b;
}

Ball Ball::inflated(const Real& extra) const {
  Ball b = *this;
  b.rad_ = rad_add(rad_, extra);
  return b;
}

Ball Ball::center() const { return exact(re_, im_, bits()); }

std::complex<double> Ball::mid() const {
  return {re_.to_double(Round::Nearest), im_.to_double(Round::Nearest)};
}

std::string Ball::str(int digits) const {
  std::ostringstream os;
  os << "[" << re_.to_short(digits) << (im_.sign() < 0 ? " - " : " + ") << abs(im_).to_short(digits)
     << "i +/- " << rad_.to_short(3) << "]";
  return os.str();
}

Ball operator+(const Ball& a, const Ball& b) {
  Ball r(std::max(a.bits(), b.bits()));
  mpfr_add(r.re_.raw(), a.re_.raw(), b.re_.raw(), MPFR_RNDN);
  mpfr_add(r.im_.raw(), a.im_.raw(), b.im_.raw(), MPFR_RNDN);
  r.rad_ = rad_add(a.rad_, b.rad_);
  r.add_rounding(abs_sum_upper(r.re_, r.im_));
  return r;
}

Ball operator-(const Ball& a) {
  Ball r = a;
  mpfr_neg(r.re_.raw(), r.re_.raw(), MPFR_RNDN);
  mpfr_neg(r.im_.raw(), r.im_.raw(), MPFR_RNDN);
  return r;
}

Ball operator-(const Ball& a, const Ball& b) { return a + (-b); }

Ball operator*(const Ball& a, const Ball& b) {
  Ball r(std::max(a.bits(), b.bits()));
  mpfr_fmms(r.re_.raw(), a.re_.raw(), b.re_.raw(), a.im_.raw(), b.im_.raw(), MPFR_RNDN);
  mpfr_fmma(r.im_.raw(), a.re_.raw(), b.im_.raw(), a.im_.raw(), b.re_.raw(), MPFR_RNDN);
  const Real ma = a.center_abs_upper();
  const Real mb = b.center_abs_upper();
  r.rad_ = rad_add(rad_add(rad_mul(ma, b.rad_), rad_mul(mb, a.rad_)), rad_mul(a.rad_, b.rad_));
  r.add_rounding(abs_sum_upper(r.re_, r.im_));
  return r;
}

Ball scale(const Ball& a, const Real& s) {
  Ball b = Ball::exact(mul(a.re(), s, Round::Nearest, a.bits()), mul(a.im(), s, Round::Nearest, a.bits()), a.bits());
  Real err = mul_2si(abs_sum_upper(b.re(), b.im()), 1 - static_cast<long>(a.bits()));
  Real srad = rad_mul(a.rad(), abs(s).rounded(kR, Round::Up));
  return b.inflated(rad_add(err, srad));
}

Ball scale_q(const Ball& a, const mpq_class& q) {
  const mpfr_prec_t p = a.bits();
  Real re = mul_q(a.re(), q, Round::Nearest, p);
  Real im = mul_q(a.im(), q, Round::Nearest, p);
  Real err = mul_2si(abs_sum_upper(re, im), 1 - static_cast<long>(p));
  Real qa(abs(q), kR, Round::Up);
  Ball b = Ball::exact(re, im, p);
  return b.inflated(rad_add(err, rad_mul(a.rad(), qa)));
}

Ball mul_i(const Ball& a) { return Ball(neg(a.im()), a.re(), a.rad()); }

Ball conj(const Ball& a) { return Ball(a.re(), neg(a.im()), a.rad()); }

Ball sqr(const Ball& a) { return a * a; }

Ball pow_ui(const Ball& a, unsigned long n) {
  Ball result = Ball::exact(Real(1L, a.bits()), Real(0L, a.bits()), a.bits());
  Ball base = a;
  while (n > 0) {
    if (n & 1UL) result = result * base;
    n >>= 1;
    if (n > 0) base = sqr(base);
  }
  return result;
}

Ball exp(const Ball& a) {
  const mpfr_prec_t p = a.bits();
  Real e = exp(a.re(), Round::Nearest, p);
  Real c = cos(a.im(), Round::Nearest, p);
  Real s = sin(a.im(), Round::Nearest, p);
  Real re = mul(e, c, Round::Nearest, p);
  Real im = mul(e, s, Round::Nearest, p);
  // Three correctly rounded steps per component, bounded by 2^(4-p) e^x.
  Real eu = exp(a.re(), Round::Up, kR);
  Real err = mul_2si(eu, 4 - static_cast<long>(p));
  Real prop = rad_mul(eu, expm1(a.rad(), Round::Up, kR));
  return Ball::exact(re, im, p).inflated(rad_add(err, prop));
}

Ball unit_root(const mpq_class& q, mpfr_prec_t bits) {
  // Reduce q into (-1, 1] so the angle stays below pi in magnitude.
  mpq_class t = q;
  mpz_class k = t.get_num() / t.get_den();  // truncates toward zero
  mpz_class two_k = k - (k % 2);
  t -= mpq_class(two_k);
  if (t > 1) t -= 2;
  if (t <= -1) t += 2;
  const mpfr_prec_t p = bits + 16;
  Real theta = mul_q(Real::pi(p, Round::Nearest), t, Round::Nearest, p);
  Real c = cos(theta, Round::Nearest, bits);
  Real s = sin(theta, Round::Nearest, bits);
  // Angle error <= 2^(3-p); trig rounding <= 2^-bits per component.
  Real err = add(mul_2si(Real(8.0, kR), -static_cast<long>(p)), mul_2si(Real(2.0, kR), -static_cast<long>(bits)),
                 Round::Up, kR);
  return Ball::exact(c, s, bits).inflated(mul_d(err, 2.0, Round::Up, kR));
}

Ball hull(const Ball& a, const Ball& b) {
  const mpfr_prec_t p = std::max(a.bits(), b.bits());
  Real mr = mul_2si(add(a.re(), b.re(), Round::Nearest, p + 1), -1);
  Real mi = mul_2si(add(a.im(), b.im(), Round::Nearest, p + 1), -1);
  mr = mr.rounded(p, Round::Nearest);
  mi = mi.rounded(p, Round::Nearest);
  auto reach = [&](const Ball& x) {
    Real dx = sub(x.re(), mr, Round::Nearest, p + 64);
    Real dy = sub(x.im(), mi, Round::Nearest, p + 64);
    return add(hypot(dx, dy, Round::Up, kR), x.rad(), Round::Up, kR);
  };
  Real r = max(reach(a), reach(b));
  return Ball::exact(mr, mi, p).inflated(r);
}

}  // namespace asymval
