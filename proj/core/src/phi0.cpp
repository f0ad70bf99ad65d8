#include "asymval/phi0.hpp"

#include <cmath>

#include "asymval/errors.hpp"

namespace asymval {

namespace {

constexpr mpfr_prec_t kR = Ball::kRadBits;

Real zero(mpfr_prec_t bits) { return Real(0L, bits); }

// Working precision for the series at modulus r: cancellation costs about
// r^2 log2(e) bits.
mpfr_prec_t series_bits(mpfr_prec_t bits, double r, bool taylor) {
  if (taylor) return bits + 16;
  return bits + static_cast<mpfr_prec_t>(std::ceil(r * r * 1.4426950408889634)) + 32;
}

struct Polar {
  Real log_r_lo;
  Real beta_hi;
  int limit;
};

// Deviation of arg(x + iy) from the nearer real half-axis, as an upper bound.
Polar polar_of(const Real& x, const Real& y) {
  Polar p{log(hypot(x, y, Round::Down, kR), Round::Down, kR), Real(kR), 1};
  Real ax = abs(x);
  Real ay = abs(y);
  // beta = atan2(|y|, |x|); correctly rounded atan2 brackets it.
  p.beta_hi = atan2(ay, ax, Round::Up, kR);
  p.limit = x.sign() >= 0 ? 1 : 0;
  return p;
}

Real cone_limit() {
  Real quarter_pi = mul_2si(Real::pi(kR, Round::Down), -2);
  return sub(quarter_pi, Real(phi0::kConeMargin, kR), Round::Down, kR);
}

}  // namespace

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::Taylor:
      return "TAYLOR";
    case Regime::Midrange:
      return "MIDRANGE";
    case Regime::Farfield:
      return "FARFIELD";
  }
  return "?";
}

Ball FarFieldForm::as_ball(mpfr_prec_t bits) const {
  Real rad = exp(log_deviation, Round::Up, kR);
  if (rad.is_zero()) rad = Real::infinity(kR);  // cannot happen with upward rounding
  return Ball::exact(Real(static_cast<long>(near_limit), bits), zero(bits), bits).inflated(rad);
}

Ball inv_sqrt_pi(mpfr_prec_t bits) {
  const mpfr_prec_t p = bits + 8;
  Real lo = div(Real(1L, p), sqrt(Real::pi(p, Round::Up), Round::Up), Round::Down);
  Real hi = div(Real(1L, p), sqrt(Real::pi(p, Round::Down), Round::Down), Round::Up);
  Real mid = mul_2si(add(lo, hi, Round::Nearest, p + 1), -1);
  Ball b = Ball::exact(mid, zero(p), bits);
  return b.inflated(sub(hi, lo, Round::Up, kR));
}

namespace phi0 {

Ball series_at(const Real& x, const Real& y, mpfr_prec_t bits, bool taylor) {
  const double r = hypot(x, y, Round::Up, 53).to_double(Round::Up);
  const mpfr_prec_t p = series_bits(bits, r, taylor);
  const Ball z = Ball::exact(x, y, p);
  const Ball mz2 = -sqr(z);
  const Real rabs = z.abs_upper();
  const Real eps = mul_2si(Real(1L, kR), -static_cast<long>(bits) - 8);

  Ball t = Ball::exact(Real(1L, p), zero(p), p);  // t_j = (-z^2)^j / j!
  Ball s1 = t;                                     // sum t_j / (2j+1)
  Ball s2(p);                                      // sum_{j>=1} t_j
  Real tail(kR);
  for (unsigned long j = 0;; ++j) {
    t = scale_q(t * mz2, mpq_class(1, j + 1));
    const unsigned long jn = j + 1;
    s1 = s1 + scale_q(t, mpq_class(1, 2 * jn + 1));
    if (taylor) s2 = s2 + t;
    // Terms up to index jn are in; bound what is left.
    if (taylor) {
      // Degree 2jn+1 is complete; |c_k| <= 1 gives 2|z|^{K+1}/(1-|z|).
      Real zk = pow_ui(rabs, 2 * jn + 2, Round::Up, kR);
      tail = div(mul_si(zk, 2, Round::Up), sub(Real(1L, kR), rabs, Round::Down, kR), Round::Up);
    } else {
      Real q = div_si(sqr(rabs, Round::Up, kR), static_cast<long>(jn + 2), Round::Up);
      if (q >= 1.0) continue;
      Real tnext = div_si(mul(t.abs_upper(), sqr(rabs, Round::Up, kR), Round::Up), static_cast<long>(jn + 1), Round::Up);
      Real denom = mul(Real(static_cast<long>(2 * jn + 3), kR), sub(Real(1L, kR), q, Round::Down), Round::Down);
      // (2/sqrt(pi)) * |z| * tail of s1; 2/sqrt(pi) < 1.13
      tail = div(mul(mul_d(rabs, 1.13, Round::Up), tnext, Round::Up), denom, Round::Up);
    }
    if (tail < eps && (!taylor || jn >= 1)) break;
    if (jn > 200000) throw PrecisionExhausted("phi0 series did not converge");
  }

  const Ball isp = inv_sqrt_pi(p);
  Ball value(p);
  if (taylor) {
    // phi0 = (z/sqrt(pi)) s1 - s2/2
    value = z * isp * s1 - scale_q(s2, mpq_class(1, 2));
    value = value.inflated(tail);
  } else {
    // erf(z) = (2z/sqrt(pi)) s1; phi0 = (erf - e^{-z^2} + 1)/2
    Ball erf = scale_q(z * isp * s1, mpq_class(2)).inflated(tail);
    Ball one = Ball::exact(Real(1L, p), zero(p), p);
    value = scale_q(erf - exp(mz2) + one, mpq_class(1, 2));
  }
  return value.with_bits(bits);
}

Real deriv_sup(const Ball& z) {
  const Real& rho = z.rad();
  Real cabs = z.center_abs_upper();
  // Re z^2 over the ball >= Re c^2 - 2|c| rho - rho^2.
  Real rec2 = sub(sqr(z.re(), Round::Down, kR), sqr(z.im(), Round::Up, kR), Round::Down);
  Real shrink = add(mul_si(mul(cabs, rho, Round::Up), 2, Round::Up), sqr(rho, Round::Up), Round::Up);
  Real min_re = sub(rec2, shrink, Round::Down);
  Real zmax = add(cabs, rho, Round::Up);
  Real isp(0.5641895835477563, kR);  // > 1/sqrt(pi) after the next bump
  isp = add_d(isp, 1e-15, Round::Up);
  return mul(exp(neg(min_re), Round::Up), add(zmax, isp, Round::Up), Round::Up);
}

}  // namespace phi0

Real phi0_far_log_bound(const Real& log_r_lower, const Real& beta_upper, mpfr_prec_t bits) {
  const mpfr_prec_t p = std::max<mpfr_prec_t>(bits, kR);
  Real cos2b = cos(mul_si(beta_upper, 2, Round::Up, p), Round::Down);
  if (cos2b.sign() <= 0) throw SectorError("far-field bound needs |beta| < pi/4");
  Real A = add(mul_si(log_r_lower, 2, Round::Down, p), log(cos2b, Round::Down), Round::Down);
  if (A > 1e8) A = Real(1e8, p);
  Real E = exp(A, Round::Down);  // r^2 cos 2beta >= E
  Real lr = log_r_lower > 1e6 ? Real(1e6, p) : log_r_lower;
  Real rcos = mul(exp(lr, Round::Down, p), cos(beta_upper, Round::Down, p), Round::Down);
  Real isp = add_d(Real(0.5641895835477563, p), 1e-15, Round::Up);
  Real inner = log1p(div(isp, rcos, Round::Up), Round::Up);
  Real half = log(Real(0.5, p), Round::Up);
  return add(sub(half, E, Round::Up), inner, Round::Up);
}

FarFieldForm phi0_far(const LogPolar& w, const PrecisionContext& ctx) {
  const Real log_rstar = log(Real(phi0::kFarRadius, kR), Round::Up);
  if (!(w.log_mod.lo > log_rstar)) throw InvalidArgument("phi0_far needs |w| > 12");
  Real beta_hi(kR);
  int limit = 1;
  if (w.has_exact_arg()) {
    mpq_class q = abs(w.exact_arg().q());
    if (q <= mpq_class(1, 2)) {
      limit = 1;
    } else {
      limit = 0;
      q = 1 - q;
    }
    beta_hi = mul_q(Real::pi(kR, Round::Up), q, Round::Up);
  } else {
    Interval a = w.arg_radians(kR);
    Real pi_lo = Real::pi(kR, Round::Down), pi_hi = Real::pi(kR, Round::Up);
    Real mid = a.mid();
    // Deviation from the nearer axis, measured on the interval shifted next to it.
    if (abs(mid) <= mul_2si(pi_lo, -1)) {
      beta_hi = max(abs(a.lo), abs(a.hi));
    } else {
      limit = 0;
      Interval d = mid.sign() > 0 ? Interval(sub(a.lo, pi_hi, Round::Down), sub(a.hi, pi_lo, Round::Up))
                                  : Interval(add(a.lo, pi_lo, Round::Down), add(a.hi, pi_hi, Round::Up));
      beta_hi = max(abs(d.lo), abs(d.hi));
    }
  }
  if (!(beta_hi <= cone_limit())) throw SectorError("argument outside the far-field cones");
  FarFieldForm f;
  f.near_limit = limit;
  f.log_deviation = phi0_far_log_bound(w.log_mod.lo, beta_hi, ctx.bits);
  return f;
}

Phi0Value phi0_eval(const Ball& z, const PrecisionContext& ctx) {
  const mpfr_prec_t bits = ctx.bits;
  const Real cabs = z.center_abs_upper();
  Phi0Value out;
  out.input_logmod = cabs.is_zero() ? -INFINITY : log(cabs, Round::Nearest, 53).to_double(Round::Nearest);

  if (cabs.is_zero()) {
    out.value = Ball::exact(zero(bits), zero(bits), bits);
    out.regime = Regime::Taylor;
  } else if (cabs <= Real(phi0::kTaylorCut, kR, Round::Down)) {
    out.value = phi0::series_at(z.re(), z.im(), bits, true);
    out.regime = Regime::Taylor;
  } else if (cabs <= phi0::kFarRadius) {
    out.value = phi0::series_at(z.re(), z.im(), bits, false);
    out.regime = Regime::Midrange;
  } else {
    bool done = false;
    Polar pol = polar_of(z.re(), z.im());
    if (pol.beta_hi <= cone_limit()) {
      Real lb = phi0_far_log_bound(pol.log_r_lo, pol.beta_hi, bits);
      // Accept only when the bound is as tight as the series would be.
      if (lb < -static_cast<double>(bits) * 0.6931471805599453) {
        FarFieldForm f{pol.limit, lb};
        out.value = f.as_ball(bits);
        out.regime = Regime::Farfield;
        done = true;
      }
    }
    if (!done) {
      if (cabs > phi0::kSeriesMax)
        throw PrecisionExhausted("phi0 at |z| = " + cabs.to_short(6) + " outside the far-field cones");
      out.value = phi0::series_at(z.re(), z.im(), bits, false);
      out.regime = Regime::Midrange;
    }
  }

  Real scale_ref = max(Real(1L, kR), out.value.center_abs_upper());
  Real tol = mul_2si(scale_ref, 24 - static_cast<long>(bits));
  if (out.value.rad() > tol) throw PrecisionExhausted("phi0 radius " + out.value.rad().to_short(4) + " above tolerance");

  if (!z.rad().is_zero()) out.value = out.value.inflated(mul(phi0::deriv_sup(z), z.rad(), Round::Up, kR));
  return out;
}

Ball phi0_deriv(const Ball& z, const PrecisionContext& ctx) {
  const mpfr_prec_t p = ctx.bits + 16;
  Ball zz = z.with_bits(p);
  Ball v = exp(-sqr(zz)) * (zz + inv_sqrt_pi(p));
  return v.with_bits(ctx.bits);
}

}  // namespace asymval
