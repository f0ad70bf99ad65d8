#include "asymval/evaluate.hpp"

#include <algorithm>
#include <cmath>

#include "asymval/errors.hpp"

namespace asymval {

namespace {

constexpr mpfr_prec_t kR = 64;

Real zero_r() { return Real(0L, kR); }

Interval radians_of(const mpq_class& lo, const mpq_class& hi, mpfr_prec_t p) {
  const Real pl = Real::pi(p, Round::Down), ph = Real::pi(p, Round::Up);
  auto down = [&](const mpq_class& q) { return q >= 0 ? mul_q(pl, q, Round::Down, p) : mul_q(ph, q, Round::Down, p); };
  auto up = [&](const mpq_class& q) { return q >= 0 ? mul_q(ph, q, Round::Up, p) : mul_q(pl, q, Round::Up, p); };
  return {down(lo), up(hi)};
}

Ball times_beta(const Ball& b, const GaussianRational& beta) {
  if (beta.im == 0) return scale_q(b, beta.re);
  return scale_q(mul_i(b), beta.im);
}

Real abs_minus_one(const Ball& b) {
  return (b - Ball::exact(Real(1L, b.bits()), Real(0L, b.bits()), b.bits())).abs_upper();
}

Real q_abs_upper(const GaussianRational& g) {
  Real s(mpq_class(g.re * g.re + g.im * g.im), kR, Round::Up);
  return sqrt(s, Round::Up);
}

Real qabs(const mpq_class& q) { return Real(mpq_class(abs(q)), kR, Round::Up); }

bool in_set(const std::vector<long>& A, long n) { return std::binary_search(A.begin(), A.end(), n); }

Real log_cut(double v, Round rnd) { return log(Real(v, kR), rnd); }

}  // namespace

Real log_r_zero(mpfr_prec_t bits) { return Real::infinity(bits, -1); }

RayPlan make_ray(const TargetSelection& selection, const FunctionPlan& plan) {
  RayPlan r;
  r.selection = selection;
  r.plan = plan;
  r.depth = plan.levels;
  if (selection.max_index() > r.depth)
    throw DepthInsufficient("target uses index " + std::to_string(selection.max_index()) + " but the plan has " +
                            std::to_string(r.depth) + " levels");
  r.bits = selection.bits_prefix(r.depth);
  r.sector = address_to_sector(r.bits, plan).back();
  r.theta = RationalAngle(r.sector.mid());
  r.theta_width = r.sector.width();
  return r;
}

Ball phi_n_eval(int n, const Real& log_r, const Arc& arc, const FunctionPlan& plan, const PrecisionContext& ctx) {
  if (n < 1 || n > plan.levels) throw InvalidArgument("level " + std::to_string(n) + " is outside the plan");
  if (arc.hi < arc.lo) throw InvalidArgument("arc endpoints out of order");
  const mpfr_prec_t bits = ctx.bits;
  if (log_r.is_inf() && log_r.sign() < 0) return Ball::exact(Real(0L, bits), Real(0L, bits), bits);
  if (!log_r.is_finite()) throw InvalidArgument("log r must be finite or -inf");

  const mpz_class& N = plan.N_at(n);
  const Real& ll = plan.logLambda_at(n);
  const mpfr_prec_t p =
      static_cast<mpfr_prec_t>(mpz_sizeinbase(N.get_mpz_t(), 2)) + log_r.bits() + ll.bits() + 16;
  Interval lw(add(ll, mul_z(log_r, N, Round::Down, p), Round::Down, p),
              add(ll, mul_z(log_r, N, Round::Up, p), Round::Up, p));

  LogPolar w;
  if (arc.is_ray()) {
    w = LogPolar(lw, RationalAngle(mpq_class(arc.lo * N)));
  } else {
    auto [lo, hi] = image_interval(SectorInterval{arc.lo, arc.hi, 0}, N);
    w = LogPolar(lw, radians_of(lo, hi, bits + 16));
  }

  if (lw.hi < -LogPolar::kDefaultCutoff) {
    // |phi0(w)| <= 4|w| for |w| < 1
    Real l4 = mul_si(Real::ln2(kR, Round::Up), 2, Round::Up);
    Real rad = exp(mul_si(add(l4, lw.hi, Round::Up, kR), n, Round::Up), Round::Up, kR);
    return Ball::disc(Real(0L, bits), Real(0L, bits), rad, bits);
  }
  const bool huge = lw.hi > log_cut(phi0::kSeriesMax, Round::Down);
  if (lw.lo > log_cut(phi0::kFarRadius, Round::Up)) {
    try {
      FarFieldForm f = phi0_far(w, ctx);
      if (huge || f.log_deviation < -static_cast<double>(bits) * 0.6931471805599453)
        return pow_ui(f.as_ball(bits), static_cast<unsigned long>(n));
    } catch (const SectorError& e) {
      if (huge) throw UncertifiedAngle("level " + std::to_string(n) + ": " + e.what());
    }
  }
  if (huge) throw UncertifiedAngle("level " + std::to_string(n) + ": |w| straddles the series limit");
  Ball z = logpolar_to_ball(w, bits + 8);
  return pow_ui(phi0_eval(z, ctx).value, static_cast<unsigned long>(n));
}

int truncation_index(const Real& log_r, const FunctionPlan& plan) {
  for (int n = 1; n <= plan.levels; ++n)
    if (plan.logR_at(n) > log_r) return n;
  throw TailUnavailable("log r = " + log_r.to_short(8) + " is beyond log r_" + std::to_string(plan.levels));
}

PartialSum phi_partial(const Real& log_r, const Arc& arc, const FunctionPlan& plan, int n_eval,
                       const PrecisionContext& ctx) {
  const mpfr_prec_t bits = ctx.bits;
  PartialSum out;
  out.value = Ball::exact(Real(0L, bits), Real(0L, bits), bits);
  const bool origin = log_r.is_inf() && log_r.sign() < 0;
  if (n_eval == 0) n_eval = origin ? 1 : truncation_index(log_r, plan);
  if (n_eval < 1 || n_eval > plan.levels) throw TailUnavailable("n_eval outside the plan");
  if (!origin && !(log_r < plan.logR_at(n_eval)))
    throw TailUnavailable("tail bound needs log r < log r_" + std::to_string(n_eval));
  out.n_eval = n_eval;
  for (int n = 1; n <= n_eval; ++n) {
    out.terms.push_back(phi_n_eval(n, log_r, arc, plan, ctx));
    const GaussianRational b = beta(n);
    if (b.re != 0 || b.im != 0) out.value = out.value + times_beta(out.terms.back(), b);
  }
  out.tail = origin ? zero_r() : mul_2si(Real(1L, kR), -n_eval);
  return out;
}

std::vector<RayRow> ray_table(const RayPlan& ray, const std::vector<Real>& grid, const PrecisionContext& ctx) {
  const mpfr_prec_t bits = ctx.bits;
  const Ball omega = Ball::from_mpq(ray.selection.omega.re, ray.selection.omega.im, bits);
  std::vector<RayRow> rows;
  rows.reserve(grid.size());
  for (const Real& lr : grid) {
    RayRow row;
    row.log_r = lr;
    try {
      PartialSum mid = phi_partial(lr, Arc::ray(ray.theta), ray.plan, 0, ctx);
      PartialSum hull = phi_partial(lr, Arc::of(ray.sector), ray.plan, mid.n_eval, ctx);
      Real shift = (hull.value.center() - mid.value.center()).abs_upper();
      Real slack = sub(add(shift, hull.value.rad(), Round::Up, kR), mid.value.rad(), Round::Up, kR);
      if (slack.sign() < 0) slack = zero_r();
      row.phi = hull.value;
      row.terms = std::move(hull.terms);
      row.n_eval = mid.n_eval;
      row.evaluated_radius = mid.value.rad().rounded(kR, Round::Up);
      row.truncation_tail = mid.tail;
      row.theta_slack = slack;
      const bool at_origin = mid.value.re().is_zero() && mid.value.im().is_zero() && mid.value.rad().is_zero();
      Real d = at_origin ? omega.abs_upper() : (mid.value.center() - omega).abs_upper();
      d = add(d, row.evaluated_radius, Round::Up, kR);
      d = add(d, slack, Round::Up, kR);
      row.distance = add(d, mid.tail, Round::Up, kR);
      row.ok = true;
    } catch (const Error& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<Real> log_decade_grid(double from, double to, int per_decade, mpfr_prec_t bits) {
  if (!(from > 0) || !(to >= from) || per_decade < 1) throw InvalidArgument("bad radius grid");
  const long k0 = static_cast<long>(std::ceil(per_decade * std::log10(from) - 1e-9));
  const long k1 = static_cast<long>(std::floor(per_decade * std::log10(to) + 1e-9));
  const Real ln10 = log(Real(10L, bits + 16), Round::Nearest);
  std::vector<Real> out;
  for (long k = k0; k <= k1; ++k) {
    mpq_class q(k, per_decade);
    q.canonicalize();
    Real t(q, bits + 16, Round::Nearest);
    Real v = exp(mul(t, ln10, Round::Nearest), Round::Nearest).rounded(bits, Round::Nearest);
    if (v < from || v > to) continue;
    out.push_back(v);
  }
  return out;
}

std::array<Real, 5> lemma1_pieces(const RayPlan& ray, int n0, const Real& log_r, const PrecisionContext& ctx) {
  const FunctionPlan& plan = ray.plan;
  const int L = plan.levels;
  if (!(log_r < plan.logR_at(L))) throw TailUnavailable("lemma pieces need log r < log r_L");
  const auto& A = ray.selection.A;
  const Arc arc = Arc::of(ray.sector);
  std::array<Real, 5> pc{zero_r(), zero_r(), zero_r(), zero_r(), zero_r()};
  GaussianRational head{0, 0};
  for (int n = 1; n <= L; ++n) {
    const GaussianRational b = beta(n);
    const bool inA = in_set(A, n);
    if (inA && n <= n0) head = head + b;
    if (b.re == 0 && b.im == 0) continue;
    const Real wb = qabs(b.re == 0 ? b.im : b.re);
    const Ball phi = phi_n_eval(n, log_r, arc, plan, ctx);
    if (inA && n <= n0) {
      pc[0] = add(pc[0], mul(wb, abs_minus_one(phi), Round::Up, kR), Round::Up, kR);
    } else if (inA) {
      pc[2] = add(pc[2], mul(wb, phi.abs_upper(), Round::Up, kR), Round::Up, kR);
    } else if (n <= n0) {
      pc[3] = add(pc[3], mul(wb, phi.abs_upper(), Round::Up, kR), Round::Up, kR);
    } else {
      Real k = pow_ui(Real(0.75, kR), static_cast<unsigned long>(n), Round::Up);
      pc[4] = add(pc[4], mul(wb, min(phi.abs_upper(), k), Round::Up, kR), Round::Up, kR);
    }
  }
  // A beyond the plan cannot happen (make_ray checks); the (1/2)^p bound covers p > L.
  pc[4] = add(pc[4], mul_2si(Real(1L, kR), -L), Round::Up, kR);
  pc[1] = q_abs_upper(head - ray.selection.omega);
  return pc;
}

Lemma1Result lemma1_radius(const RayPlan& ray, double epsilon, const PrecisionContext& ctx, int per_decade) {
  if (!(epsilon > 0)) throw InvalidArgument("epsilon must be positive");
  const FunctionPlan& plan = ray.plan;
  const int L = plan.levels;
  const double fifth = epsilon / 5;
  if (std::ldexp(1.0, -L) >= fifth) {
    const int need = static_cast<int>(std::floor(std::log2(5.0 / epsilon))) + 1;
    throw DepthInsufficient("epsilon " + std::to_string(epsilon) + " needs at least " + std::to_string(need) +
                            " levels; the plan has " + std::to_string(L));
  }
  Lemma1Result res;
  res.per_decade = per_decade;
  res.n0 = static_cast<int>(ray.selection.max_index());
  const double top = plan.logR_at(L).to_double(Round::Down);
  for (const Real& lr : log_decade_grid(1.0, top, per_decade)) {
    if (!(lr < plan.logR_at(L))) break;
    std::array<Real, 5> pc;
    try {
      pc = lemma1_pieces(ray, res.n0, lr, ctx);
    } catch (const UncertifiedAngle&) {
      continue;
    }
    bool ok = true;
    for (const auto& x : pc) ok = ok && x < fifth;
    if (ok) {
      res.log_R = lr;
      res.pieces = pc;
      return res;
    }
  }
  throw DepthInsufficient("no grid radius below r_" + std::to_string(L) + " reaches epsilon " +
                          std::to_string(epsilon));
}

TowerMag maxmod_upper(const Real& log_r, const FunctionPlan& plan, const PrecisionContext& ctx) {
  (void)ctx;
  if (!(log_r > 1.0)) throw InvalidArgument("maxmod_upper needs log r > 1");
  const int L = plan.levels;
  if (!(log_r < add_d(plan.logR_at(L), 1.0, Round::Down, kR)))
    throw DepthInsufficient("radius beyond e r_" + std::to_string(L) + "; build a deeper plan");
  std::vector<TowerMag> parts;
  const Real log4 = mul_si(Real::ln2(kR, Round::Up), 2, Round::Up);
  const Real isp = div(Real(1L, kR), sqrt(Real::pi(kR, Round::Down), Round::Down), Round::Up);
  for (int q = 2; q <= L; ++q) {
    const mpz_class& N = plan.N_at(q);
    const Real& ll = plan.logLambda_at(q);
    const mpfr_prec_t p =
        static_cast<mpfr_prec_t>(mpz_sizeinbase(N.get_mpz_t(), 2)) + log_r.bits() + ll.bits() + 16;
    // log rho_q, rounded up, then a bound on |phi0|^q from (6ii) or (5)
    Real lrho = add(ll, mul_z(log_r, N, Round::Up, p), Round::Up, p).rounded(kR, Round::Up);
    if (lrho.sign() < 0) {
      parts.push_back(TowerMag::from_log_upper(mul_si(add(log4, lrho, Round::Up), q, Round::Up)));
    } else if (lrho <= 20.0) {
      Real rho = exp(lrho, Round::Up);
      Real inner = add(sqr(rho, Round::Up), log1p(mul(rho, isp, Round::Up), Round::Up), Round::Up);
      parts.push_back(TowerMag::from_log_upper(mul_si(inner, q, Round::Up)));
    } else {
      Real corr = log1p(mul(add_d(lrho, 1.0, Round::Up), exp(mul_si(lrho, -2, Round::Up), Round::Up), Round::Up),
                        Round::Up);
      Real LL = add(add(log(Real(static_cast<long>(q), kR), Round::Up), mul_si(lrho, 2, Round::Up), Round::Up), corr,
                    Round::Up);
      parts.push_back(TowerMag::from_loglog_upper(LL));
    }
  }
  parts.push_back(TowerMag::from_value_upper(mul_2si(Real(1L, kR), -L)));
  return tower_sum_upper(parts);
}

std::vector<GrowthRow> growth_check(const FunctionPlan& plan, const std::vector<Real>& grid,
                                    const PrecisionContext& ctx) {
  std::vector<GrowthRow> rows;
  const double e = std::exp(1.0);
  for (const Real& lr : grid) {
    if (!(lr > 1.0)) throw InvalidArgument("growth_check radii must exceed e");
    GrowthRow row;
    row.log_r = lr;
    row.maxmod = maxmod_upper(lr, plan, ctx);
    if (row.maxmod.level() == 0 && row.maxmod.mantissa() <= e)
      row.loglog_bound = zero_r();
    else
      row.loglog_bound = tower_loglog(row.maxmod, kR).hi.rounded(kR, Round::Up);
    Real g = plan.growth.eval_log(lr, Round::Down, lr.bits() + 16);
    row.budget = mul(g, lr, Round::Down, kR);
    row.pass = row.loglog_bound < row.budget;
    rows.push_back(std::move(row));
  }
  return rows;
}

TargetSelection infinity_selection(const FunctionPlan& plan) {
  TargetSelection s = infinity_target(plan.levels);
  std::vector<long> keep;
  for (long n : s.A)
    if (n <= plan.levels) keep.push_back(n);
  s.A = keep;
  s.achieved = {0, 0};
  s.abs_sum = 0;
  for (long n : s.A) {
    s.achieved = s.achieved + beta(n);
    s.abs_sum += beta(n).re;
  }
  s.omega = s.achieved;
  return s;
}

InfinityCheck infinity_ray_check(double M, const FunctionPlan& plan, const PrecisionContext& ctx, int per_decade) {
  if (!(M > 3)) throw InvalidArgument("the infinity argument needs M > 3");
  InfinityCheck out;
  out.selection = infinity_selection(plan);
  const auto& A = out.selection.A;
  mpq_class sum = 0;
  const mpq_class target(M * 4);
  for (long n : A) {
    sum += beta(n).re;
    if (sum > target) {
      out.n0 = static_cast<int>(n);
      break;
    }
  }
  if (out.n0 == 0)
    throw DepthInsufficient("sum of beta_n over the infinity address stays <= 4M within " +
                            std::to_string(plan.levels) + " levels");
  out.partial_beta_sum = sum;
  const RayPlan ray = make_ray(out.selection, plan);
  const Arc arc = Arc::of(ray.sector);
  out.off_a_bound = Real(3L, kR);  // sum_{n >= 1} (3/4)^n
  const double start = plan.logR_at(out.n0).to_double(Round::Up);
  const Real two_m(2 * M, kR);
  for (const Real& lr : log_decade_grid(start, start * 10, per_decade)) {
    Real lower = zero_r();
    for (long n : A) {
      if (n > out.n0) break;
      const Ball phi = phi_n_eval(static_cast<int>(n), lr, arc, plan, ctx);
      Real re_lo = sub(phi.re(), phi.rad(), Round::Down, kR);
      lower = add(lower, mul_q(re_lo, beta(n).re, Round::Down, kR), Round::Down, kR);
    }
    if (lower > two_m) {
      out.log_r = lr;
      out.partial_re_lower = lower;
      out.certified_re_lower = sub(lower, out.off_a_bound, Round::Down, kR);
      return out;
    }
  }
  throw DepthInsufficient("no radius in the searched decade certifies Re > 2M");
}

}  // namespace asymval
