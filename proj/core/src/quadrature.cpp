#include "asymval/quadrature.hpp"

#include <cmath>

#include "asymval/errors.hpp"

namespace asymval {

namespace {

// P_n(x) and P_n'(x) by the three-term recurrence.
void legendre(int n, const Real& x, Real& p, Real& dp) {
  const mpfr_prec_t b = x.bits();
  Real p0(1L, b);
  Real p1 = x;
  for (int k = 2; k <= n; ++k) {
    // k P_k = (2k-1) x P_{k-1} - (k-1) P_{k-2}
    Real t = sub(mul_si(mul(x, p1, Round::Nearest), 2 * k - 1, Round::Nearest),
                 mul_si(p0, k - 1, Round::Nearest), Round::Nearest);
    p0 = p1;
    p1 = div_si(t, k, Round::Nearest);
  }
  p = p1;
  // P_n' = n (x P_n - P_{n-1}) / (x^2 - 1)
  Real num = mul_si(sub(mul(x, p1, Round::Nearest), p0, Round::Nearest), n, Round::Nearest);
  dp = div(num, sub(sqr(x, Round::Nearest), Real(1L, b), Round::Nearest), Round::Nearest);
}

}  // namespace

ErfIntegralOracle::ErfIntegralOracle(mpfr_prec_t bits, int order) : bits_(bits) {
  if (order < 2) throw InvalidArgument("quadrature order must be >= 2");
  const mpfr_prec_t wp = bits + 32;
  for (int i = 1; i <= order; ++i) {
    Real x(std::cos(M_PI * (i - 0.25) / (order + 0.5)), wp);
    Real p(wp), dp(wp);
    for (int it = 0; it < 200; ++it) {
      legendre(order, x, p, dp);
      Real dx = div(p, dp, Round::Nearest);
      x = sub(x, dx, Round::Nearest);
      if (dx.is_zero() || abs(dx) < mul_2si(Real(1L, wp), -static_cast<long>(wp) + 4)) break;
    }
    legendre(order, x, p, dp);
    Real w = div(Real(2L, wp), mul(sub(Real(1L, wp), sqr(x, Round::Nearest), Round::Nearest), sqr(dp, Round::Nearest),
                                   Round::Nearest),
                 Round::Nearest);
    nodes_.push_back(x.rounded(bits, Round::Nearest));
    weights_.push_back(w.rounded(bits, Round::Nearest));
  }
}

void ErfIntegralOracle::panel(const Real& zr, const Real& zi, const Real& a, const Real& b, Real& out_re,
                              Real& out_im) const {
  const mpfr_prec_t p = bits_;
  Real half = mul_2si(sub(b, a, Round::Nearest, p), -1);
  Real mid = mul_2si(add(a, b, Round::Nearest, p), -1);
  // -z^2 = -(zr^2 - zi^2) - 2 i zr zi
  Real a2 = sub(sqr(zi, Round::Nearest, p), sqr(zr, Round::Nearest, p), Round::Nearest);
  Real b2 = mul_si(mul(zr, zi, Round::Nearest, p), -2, Round::Nearest);
  Real sr(0L, p), si(0L, p);
  for (size_t k = 0; k < nodes_.size(); ++k) {
    Real t = add(mid, mul(half, nodes_[k], Round::Nearest), Round::Nearest);
    Real t2 = sqr(t, Round::Nearest);
    Real mag = exp(mul(a2, t2, Round::Nearest), Round::Nearest);
    Real ph = mul(b2, t2, Round::Nearest);
    Real wm = mul(weights_[k], mag, Round::Nearest);
    sr = add(sr, mul(wm, cos(ph, Round::Nearest), Round::Nearest), Round::Nearest);
    si = add(si, mul(wm, sin(ph, Round::Nearest), Round::Nearest), Round::Nearest);
  }
  out_re = mul(sr, half, Round::Nearest);
  out_im = mul(si, half, Round::Nearest);
}

ComplexValue ErfIntegralOracle::integral(double zr_d, double zi_d, double tol) const {
  if (!(tol > 0)) throw InvalidArgument("quadrature tolerance must be positive");
  if (std::hypot(zr_d, zi_d) > 50.0) throw InvalidArgument("quadrature oracle limited to |z| <= 50");
  const mpfr_prec_t p = bits_;
  const Real zr(zr_d, p), zi(zi_d, p);
  if (zr.is_zero() && zi.is_zero()) return {Real(0L, p), Real(0L, p)};

  // Integral of e^{-z^2 t^2} over [0,1]; tolerance scaled by |z| afterwards.
  const double ztol = tol / std::max(1.0, std::hypot(zr_d, zi_d));
  struct Job {
    Real a, b;
    Real whole_re, whole_im;
    int depth;
  };
  Real fr(p), fi(p);
  panel(zr, zi, Real(0L, p), Real(1L, p), fr, fi);
  std::vector<Job> stack{{Real(0L, p), Real(1L, p), fr, fi, 0}};
  Real acc_re(0L, p), acc_im(0L, p);
  while (!stack.empty()) {
    Job job = std::move(stack.back());
    stack.pop_back();
    Real m = mul_2si(add(job.a, job.b, Round::Nearest), -1);
    Real lr(p), li(p), rr(p), ri(p);
    panel(zr, zi, job.a, m, lr, li);
    panel(zr, zi, m, job.b, rr, ri);
    Real sr = add(lr, rr, Round::Nearest);
    Real si = add(li, ri, Round::Nearest);
    Real err = hypot(sub(sr, job.whole_re, Round::Nearest), sub(si, job.whole_im, Round::Nearest), Round::Up);
    Real width = sub(job.b, job.a, Round::Nearest);
    if (err <= mul_d(width, ztol, Round::Down)) {
      acc_re = add(acc_re, sr, Round::Nearest);
      acc_im = add(acc_im, si, Round::Nearest);
      continue;
    }
    if (job.depth >= 48) throw ToleranceUnreachable("quadrature bisection depth exhausted");
    stack.push_back({m, job.b, rr, ri, job.depth + 1});
    stack.push_back({job.a, m, lr, li, job.depth + 1});
  }
  // Multiply by z.
  Real re = sub(mul(zr, acc_re, Round::Nearest), mul(zi, acc_im, Round::Nearest), Round::Nearest);
  Real im = add(mul(zr, acc_im, Round::Nearest), mul(zi, acc_re, Round::Nearest), Round::Nearest);
  return {re, im};
}

ComplexValue erf_integral_oracle(double zr, double zi, double tol) {
  const double grow = std::max(0.0, zi * zi - zr * zr) * 1.4426950408889634;
  const double want = -std::log2(tol);
  const auto bits = static_cast<mpfr_prec_t>(std::max(64.0, want + grow + 40.0));
  return ErfIntegralOracle(bits).integral(zr, zi, tol);
}

}  // namespace asymval
