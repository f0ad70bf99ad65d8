#include "asymval/numerics/log_polar.hpp"

#include <algorithm>

#include "asymval/errors.hpp"

namespace asymval {

Interval LogPolar::arg_radians(mpfr_prec_t bits) const {
  if (has_exact_arg()) return exact_arg().radians(bits);
  return std::get<Interval>(arg);
}

LogPolar logpolar_mul(const LogPolar& a, const LogPolar& b) {
  Interval lm = add(a.log_mod, b.log_mod);
  if (a.has_exact_arg() && b.has_exact_arg()) return {lm, a.exact_arg().plus(b.exact_arg())};
  const mpfr_prec_t p = std::max(a.log_mod.bits(), b.log_mod.bits());
  return {lm, add(a.arg_radians(p), b.arg_radians(p))};
}

LogPolar logpolar_pow_int(const LogPolar& w, const mpz_class& k) {
  if (k < 1) throw InvalidArgument("logpolar_pow_int needs k >= 1");
  const mpfr_prec_t p = w.log_mod.bits() + static_cast<mpfr_prec_t>(mpz_sizeinbase(k.get_mpz_t(), 2));
  Interval lm = mul_z(w.log_mod, k, p);
  if (w.has_exact_arg()) return {lm, w.exact_arg().times(k)};
  return {lm, mul_z(std::get<Interval>(w.arg), k, p)};
}

Ball logpolar_to_ball(const LogPolar& w, mpfr_prec_t bits, double cutoff) {
  if (w.log_mod.hi > cutoff || w.log_mod.lo < -cutoff)
    throw RangeError("log-modulus " + w.log_mod.hi.to_short(6) + " beyond the representable cutoff");
  const mpfr_prec_t p = bits + 16;
  // Modulus: centre of [e^lo, e^hi], radius half the width.
  Real mlo = exp(w.log_mod.lo, Round::Down, p);
  Real mhi = exp(w.log_mod.hi, Round::Up, p);
  Real mmid = mul_2si(add(mlo, mhi, Round::Nearest, p), -1);
  Real mrad = sub(mhi, mmid, Round::Up, Ball::kRadBits);
  Real mrad2 = sub(mmid, mlo, Round::Up, Ball::kRadBits);
  Ball modulus = Ball::disc(mmid, Real(0L, p), max(mrad, mrad2), bits);
  Ball dir(bits);
  if (w.has_exact_arg()) {
    dir = w.exact_arg().unit(bits);
  } else {
    const Interval& a = std::get<Interval>(w.arg);
    Real amid = a.mid();
    Real arad = a.width();  // |e^{ix} - e^{iy}| <= |x - y|
    dir = Ball::exact(cos(amid, Round::Nearest, bits), sin(amid, Round::Nearest, bits), bits)
              .inflated(add(arad, mul_2si(Real(4.0, Ball::kRadBits), -static_cast<long>(bits)), Round::Up,
                            Ball::kRadBits));
  }
  return modulus * dir;
}

}  // namespace asymval
