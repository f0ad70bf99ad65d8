#include "asymval/certify.hpp"

#include <cmath>
#include <sstream>

#include "asymval/errors.hpp"
#include "asymval/phi0.hpp"

namespace asymval {

namespace {

constexpr mpfr_prec_t kR = Ball::kRadBits;
constexpr int kInitialSteps = 64;
constexpr int kMaxRefine = 30;

Real R(double v) { return Real(v, kR); }

// 1/sqrt(pi) from above.
Real isp_up() { return add_d(Real(0.5641895835477563, kR), 1e-15, Round::Up); }

// sup |phi0''| over the ball, phi0'' = e^{-z^2}(1 - 2z^2 - 2z/sqrt(pi)).
Real second_sup(const Ball& z) {
  const Real& rho = z.rad();
  Real cabs = z.center_abs_upper();
  Real rec2 = sub(sqr(z.re(), Round::Down, kR), sqr(z.im(), Round::Up, kR), Round::Down);
  Real shrink = add(mul_si(mul(cabs, rho, Round::Up), 2, Round::Up), sqr(rho, Round::Up), Round::Up);
  Real min_re = sub(rec2, shrink, Round::Down);
  Real zmax = add(cabs, rho, Round::Up);
  Real poly = add(add(Real(1L, kR), mul_si(sqr(zmax, Round::Up), 2, Round::Up), Round::Up),
                  mul_si(mul(zmax, isp_up(), Round::Up), 2, Round::Up), Round::Up);
  return mul(exp(neg(min_re), Round::Up), poly, Round::Up);
}

struct RayContext {
  CertKind kind;
  int n;
  Ball dir;           // e^{i theta} of the boundary ray
  Real mod_limit;     // K: strict, H: non-strict
  Real arg_limit;     // pi/(4n) from below (H)
  PrecisionContext ctx;
};

struct SegmentResult {
  bool ok = false;
  Real mod{kR};
  Real arg{kR};
  std::string why;
};

Ball ray_point(const RayContext& rc, double r) { return scale(rc.dir, Real(r, 64)); }

Ball eval_at(const RayContext& rc, double r) { return phi0_eval(ray_point(rc, r), rc.ctx).value; }

// Values on [r0, r1] lie within E = sup|f''| l^2 / 8 of the chord f(r0)f(r1).
SegmentResult check_segment(const RayContext& rc, double r0, double r1, const Ball& f0, const Ball& f1) {
  SegmentResult out;
  const double len = r1 - r0;
  Ball cover = ray_point(rc, 0.5 * (r0 + r1)).inflated(mul_d(R(len), 0.5, Round::Up));
  Real E = mul(second_sup(cover), div_si(sqr(R(len), Round::Up), 8, Round::Up), Round::Up);
  out.mod = add(max(f0.abs_upper(), f1.abs_upper()), E, Round::Up);
  const bool mod_ok = rc.kind == CertKind::KBound ? out.mod < rc.mod_limit : out.mod <= rc.mod_limit;
  if (!mod_ok) {
    out.why = "modulus";
    return out;
  }
  if (rc.kind == CertKind::HBound) {
    Real delta = add(E, max(f0.rad(), f1.rad()), Round::Up);
    Real re_min = min(f0.re(), f1.re()).rounded(kR, Round::Down);
    if (!(re_min > delta)) {
      out.why = "argument (left half-plane)";
      return out;
    }
    Real a0 = atan2(abs(f0.im()), f0.re(), Round::Up, kR);
    Real a1 = atan2(abs(f1.im()), f1.re(), Round::Up, kR);
    Real spread = asin(div(delta, re_min, Round::Up), Round::Up);
    out.arg = add(max(a0, a1), spread, Round::Up);
    if (!(out.arg < rc.arg_limit)) {
      out.why = "argument";
      return out;
    }
  }
  out.ok = true;
  return out;
}

struct RayOutcome {
  bool ok = true;
  Real sup_mod{kR};
  Real sup_arg{kR};
  long segments = 0;
  std::string why;
};

RayOutcome certify_ray(const RayContext& rc, double start, double step) {
  RayOutcome res;
  std::vector<double> pts{start};
  for (int k = 1; k <= kInitialSteps; ++k) {
    double r = step * k;
    if (r > start) pts.push_back(r);
  }
  struct Seg {
    double a, b;
    Ball fa, fb;
    int depth;
  };
  std::vector<Ball> vals;
  vals.reserve(pts.size());
  for (double r : pts) vals.push_back(eval_at(rc, r));
  std::vector<Seg> stack;
  for (size_t i = pts.size() - 1; i >= 1; --i) stack.push_back({pts[i - 1], pts[i], vals[i - 1], vals[i], 0});
  while (!stack.empty()) {
    Seg s = std::move(stack.back());
    stack.pop_back();
    ++res.segments;
    SegmentResult sr = check_segment(rc, s.a, s.b, s.fa, s.fb);
    if (sr.ok) {
      if (res.sup_mod < sr.mod) res.sup_mod = sr.mod;
      if (rc.kind == CertKind::HBound && res.sup_arg < sr.arg) res.sup_arg = sr.arg;
      continue;
    }
    if (s.depth >= kMaxRefine) {
      std::ostringstream os;
      os << sr.why << " bound violated near r = " << s.a;
      res.ok = false;
      res.why = os.str();
      return res;
    }
    double m = 0.5 * (s.a + s.b);
    Ball fm = eval_at(rc, m);
    stack.push_back({m, s.b, fm, s.fb, s.depth + 1});
    stack.push_back({s.a, m, s.fa, fm, s.depth + 1});
  }
  return res;
}

// phi0 has no zero with rho0 <= |z| <= r_split, |arg z| <= theta. By
// conjugate symmetry only 0 <= arg z <= theta is searched.
bool zero_free(const PrecisionContext& ctx, double rho0, double step, const Real& theta_up, std::string& why) {
  struct Cell {
    double a, b, t0, t1;
    int depth;
  };
  std::vector<Cell> stack;
  const double theta = theta_up.to_double(Round::Up);
  std::vector<double> pts{rho0};
  for (int k = 1; k <= kInitialSteps; ++k)
    if (step * k > rho0) pts.push_back(step * k);
  for (size_t i = pts.size() - 1; i >= 1; --i) stack.push_back({pts[i - 1], pts[i], 0.0, theta, 0});
  while (!stack.empty()) {
    Cell c = stack.back();
    stack.pop_back();
    const double rm = 0.5 * (c.a + c.b);
    const double tm = 0.5 * (c.t0 + c.t1);
    // |r e^{it} - rm e^{i tm}| <= (b-a)/2 + b (t1-t0)/2; 1e-12 covers the centre's rounding.
    Real radial = mul_d(R(c.b - c.a), 0.5, Round::Up);
    Real angular = mul(R(c.b), mul_d(R(c.t1 - c.t0), 0.5, Round::Up), Round::Up);
    Real rad = add_d(add(radial, angular, Round::Up), 1e-12, Round::Up);
    Ball cell = Ball::disc(Real(rm * std::cos(tm), 64), Real(rm * std::sin(tm), 64), rad, ctx.bits);
    if (phi0_eval(cell, ctx).value.abs_lower().sign() > 0) continue;
    if (c.depth >= 2 * kMaxRefine) {
      std::ostringstream os;
      os << "possible zero near r = " << c.a << ", arg = " << c.t0;
      why = os.str();
      return false;
    }
    if (radial >= angular) {
      stack.push_back({rm, c.b, c.t0, c.t1, c.depth + 1});
      stack.push_back({c.a, rm, c.t0, c.t1, c.depth + 1});
    } else {
      stack.push_back({c.a, c.b, tm, c.t1, c.depth + 1});
      stack.push_back({c.a, c.b, c.t0, tm, c.depth + 1});
    }
  }
  return true;
}

void check_half(const RationalAngle& half) {
  if (half.q() <= 0) throw InvalidArgument("half-angle must be positive");
  if (half.q() >= mpq_class(1, 8)) throw InvalidArgument("half-angle must be below pi/8");
}

Real half_radians_up(const RationalAngle& half) { return mul_q(Real::pi(kR, Round::Up), half.q(), Round::Up); }

}  // namespace

double SectorCertificate::mod_limit() const {
  if (kind == CertKind::KBound) return 0.75;
  return std::pow(2.0, 1.0 / n);
}

std::optional<Real> arg_upper(const Ball& b) {
  Real re_lo = sub(b.re(), b.rad(), Round::Down, kR);
  if (re_lo.sign() <= 0) return std::nullopt;
  Real im_hi = add(abs(b.im()), b.rad(), Round::Up, kR);
  return atan2(im_hi, re_lo, Round::Up, kR);
}

SectorCertificate certify_K(const RationalAngle& half, const PrecisionContext& ctx) {
  check_half(half);
  SectorCertificate cert;
  cert.kind = CertKind::KBound;
  cert.half_angle = half;
  const Real beta = half_radians_up(half);

  // Far field: deviation from 0 is decreasing in r.
  double r_split = 0;
  Real far_mod(kR);
  for (int R0 = 2; R0 <= 12; ++R0) {
    Real dev = exp(phi0_far_log_bound(log(R(R0), Round::Down), beta, kR), Round::Up);
    if (dev < 0.75) {
      r_split = R0;
      far_mod = dev;
      break;
    }
  }
  if (r_split == 0) {
    cert.reason = "far field: deviation bound not below 3/4 by r = 12";
    return cert;
  }
  cert.split_radius = r_split;
  cert.grid_step = r_split / kInitialSteps;

  RayContext rc{CertKind::KBound, 0, RationalAngle(1 - half.q()).unit(ctx.bits), R(0.75), R(0.0), ctx};
  RayOutcome ray = certify_ray(rc, 0.0, cert.grid_step);
  cert.segments = ray.segments;
  if (!ray.ok) {
    cert.reason = "near field: " + ray.why;
    return cert;
  }
  cert.sup_mod_bound = max(ray.sup_mod, far_mod);
  cert.status = CertStatus::Certified;
  return cert;
}

SectorCertificate certify_H(int n, const RationalAngle& half, const PrecisionContext& ctx) {
  if (n < 1) throw InvalidArgument("H sector level must be >= 1");
  check_half(half);
  if (half.q() * 8 * n >= 1) throw InvalidArgument("H_n half-angle must be below pi/(8n)");
  SectorCertificate cert;
  cert.kind = CertKind::HBound;
  cert.n = n;
  cert.half_angle = half;
  const Real beta = half_radians_up(half);
  const Real mod_limit = exp(div_si(Real::ln2(kR, Round::Down), n, Round::Down), Round::Down);
  const Real arg_limit = div_si(Real::pi(kR, Round::Down), 4L * n, Round::Down);

  // Tiny zone: phi0 = (z/sqrt(pi))(1 + (sqrt(pi)/2) z + E), |E| <= c|z|^2.
  double rho0 = 0.125;
  Real tiny_arg(kR);
  for (;; rho0 *= 0.5) {
    Real rho = R(rho0);
    Real c = add(add(R(1.0 / 3.0 + 1e-16), mul_d(rho, 0.44311346272638, Round::Up), Round::Up),
                 div(mul_d(sqr(rho, Round::Up), 1.77245385090552, Round::Up), sub(R(1.0), rho, Round::Down),
                     Round::Up),
                 Round::Up);
    Real u = add(mul_d(rho, 0.88622692545276, Round::Up), mul(c, sqr(rho, Round::Up), Round::Up), Round::Up);
    if (u < 1.0) {
      tiny_arg = add(beta, asin(u, Round::Up), Round::Up);
      if (tiny_arg < arg_limit) break;
    }
    if (rho0 < 1e-12) {
      cert.reason = "tiny zone: no radius keeps the argument bound";
      return cert;
    }
  }
  cert.tiny_radius = rho0;
  // |phi0| <= (rho/sqrt(pi))(1 + u) on the tiny disc.
  Real tiny_mod = mul(mul(R(rho0), isp_up(), Round::Up), R(2.0), Round::Up);

  double r_split = 0;
  Real far_mod(kR), far_arg(kR);
  for (int R0 = 2; R0 <= 12; ++R0) {
    Real dev = exp(phi0_far_log_bound(log(R(R0), Round::Down), beta, kR), Round::Up);
    if (!(dev < 1.0)) continue;
    Real m = add(R(1.0), dev, Round::Up);
    Real a = asin(dev, Round::Up);
    if (m <= mod_limit && a < arg_limit) {
      r_split = R0;
      far_mod = m;
      far_arg = a;
      break;
    }
  }
  if (r_split == 0) {
    cert.reason = "far field: deviation bound too large at r = 12";
    return cert;
  }
  cert.split_radius = r_split;
  cert.grid_step = r_split / kInitialSteps;

  std::string why;
  if (!zero_free(ctx, rho0, cert.grid_step, beta, why)) {
    cert.reason = "zero exclusion: " + why;
    return cert;
  }

  RayContext rc{CertKind::HBound, n, half.unit(ctx.bits), mod_limit, arg_limit, ctx};
  RayOutcome ray = certify_ray(rc, rho0, cert.grid_step);
  cert.segments = ray.segments;
  if (!ray.ok) {
    cert.reason = "near field: " + ray.why;
    return cert;
  }
  cert.sup_mod_bound = max(max(ray.sup_mod, far_mod), tiny_mod);
  cert.sup_arg_bound = max(max(ray.sup_arg, far_arg), tiny_arg);
  cert.status = CertStatus::Certified;
  return cert;
}

AlphaSearch find_alphas(int n_max, const PrecisionContext& ctx, int g) {
  if (n_max < 1) throw InvalidArgument("find_alphas needs n_max >= 1");
  if (g < 4 || g > 40) throw InvalidArgument("granularity must be between 2^4 and 2^40");
  AlphaSearch out;
  out.granularity_log2 = g;
  const unsigned long den = 1UL << g;
  const unsigned long eighth = den >> 3;  // 2^{g-3}

  unsigned long j = eighth - 1;
  for (;;) {
    if (j == 0) throw SearchExhausted("no K half-angle certified");
    RationalAngle cand(static_cast<long>(j), den);
    SectorCertificate c = certify_K(cand, ctx);
    if (c.certified()) {
      out.k_half = cand;
      out.k_cert = c;
      break;
    }
    j /= 2;
  }
  unsigned long prev = j;
  for (int n = 1; n <= n_max; ++n) {
    const unsigned long cap = (eighth + n - 1) / n - 1;  // ceil(2^{g-3}/n) - 1
    unsigned long jn = std::min(prev - 1, cap);
    for (;;) {
      if (jn == 0) throw SearchExhausted("no H_" + std::to_string(n) + " half-angle certified at 2^-" + std::to_string(g));
      RationalAngle cand(static_cast<long>(jn), den);
      SectorCertificate c = certify_H(n, cand, ctx);
      if (c.certified()) {
        out.alphas.emplace_back(cand.q() * 2);
        out.h_certs.push_back(c);
        break;
      }
      jn /= 2;
    }
    prev = jn;
  }
  return out;
}

}  // namespace asymval
