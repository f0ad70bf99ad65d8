#include "asymval/plan.hpp"

#include <string>

#include "asymval/errors.hpp"

namespace asymval {

namespace {

mpfr_prec_t lambda_bits(const mpz_class& n, mpfr_prec_t bits) {
  return static_cast<mpfr_prec_t>(mpz_sizeinbase(n.get_mpz_t(), 2)) + bits + 32;
}

Real log8(mpfr_prec_t bits, Round rnd) { return mul_si(Real::ln2(bits, rnd), 3, rnd); }

[[noreturn]] void breach(int n, const std::string& what) {
  throw PlanInvariantError("level " + std::to_string(n) + ": " + what);
}

}  // namespace

int default_granularity(int levels) { return levels <= 32 ? 12 : 20; }

FunctionPlan build_plan(const GrowthSpec& growth, int levels, const AlphaSearch& search,
                        const PrecisionContext& ctx) {
  if (levels < 2) throw InvalidArgument("a plan needs at least 2 levels");
  growth.validate();
  if (static_cast<int>(search.alphas.size()) < levels || static_cast<int>(search.h_certs.size()) < levels)
    throw CertMissing("alpha search covers " + std::to_string(search.alphas.size()) + " levels, need " +
                      std::to_string(levels));

  FunctionPlan p;
  p.levels = levels;
  p.growth = growth;
  p.bits = ctx.bits;
  p.granularity_log2 = search.granularity_log2;
  p.k_half = search.k_half;
  p.k_cert = search.k_cert;
  p.alphas.assign(search.alphas.begin(), search.alphas.begin() + levels);
  p.h_certs.assign(search.h_certs.begin(), search.h_certs.begin() + levels);

  const mpfr_prec_t b = ctx.bits;
  p.N.push_back(1);
  for (int n = 1; n < levels; ++n) {
    // smallest integer with N_{n+1} a_n > 3 N_n
    mpq_class ratio = mpq_class(3 * p.N.back()) / p.alphas[n - 1].q();
    mpz_class next;
    mpz_fdiv_q(next.get_mpz_t(), ratio.get_num_mpz_t(), ratio.get_den_mpz_t());
    p.N.push_back(next + 1);
  }

  const Real two(2L, b);
  const Real log2_up = Real::ln2(b, Round::Up);
  for (int n = 1; n <= levels; ++n) {
    const mpz_class& N = p.N[n - 1];
    Real y(mpz_class(3 * N), b + 16, Round::Up);
    InverseGrowth inv = inverse_growth(growth, y, b);
    Real cand = add(log2_up, inv.log_r(Round::Up, b), Round::Up, b);
    if (cand < two) cand = two;
    if (n > 1) {
      Real chain = add(add_d(log2_up, 1.0, Round::Up, b), p.logR.back(), Round::Up, b);
      if (cand < chain) cand = chain;
    }
    p.logR.push_back(cand.rounded(b, Round::Up));

    const mpfr_prec_t lb = lambda_bits(N, b);
    Real prod = mul_z(p.logR.back(), N, Round::Up, lb);
    p.logLambda.push_back(neg(add(prod, log8(lb, Round::Up), Round::Up, lb)));
  }
  verify_plan(p);
  return p;
}

FunctionPlan build_plan(const GrowthSpec& growth, int levels, const PrecisionContext& ctx) {
  if (levels < 2) throw InvalidArgument("a plan needs at least 2 levels");
  AlphaSearch s = find_alphas(levels, ctx, default_granularity(levels));
  return build_plan(growth, levels, s, ctx);
}

void verify_plan(const FunctionPlan& p) {
  const auto L = static_cast<size_t>(p.levels);
  if (p.levels < 1) throw PlanInvariantError("plan has no levels");
  if (p.alphas.size() != L || p.h_certs.size() != L || p.N.size() != L || p.logR.size() != L ||
      p.logLambda.size() != L)
    throw PlanInvariantError("per-level vectors disagree with the level count");
  if (!p.k_cert.certified() || p.k_cert.kind != CertKind::KBound || !(p.k_cert.half_angle == p.k_half))
    throw PlanInvariantError("K certificate missing or mismatched");
  if (p.N[0] != 1) breach(1, "N_1 must be 1");
  if (p.logR[0] < 2.0) breach(1, "log r_1 must be at least 2");

  for (int n = 1; n <= p.levels; ++n) {
    const auto i = static_cast<size_t>(n - 1);
    const mpq_class& a = p.alphas[i].q();
    if (a <= 0) breach(n, "alpha must be positive");
    if (n == 1 ? a >= 2 * p.k_half.q() : a >= p.alphas[i - 1].q()) breach(n, "alphas must decrease strictly");
    const SectorCertificate& c = p.h_certs[i];
    if (!c.certified() || c.kind != CertKind::HBound || c.n != n || c.half_angle.q() * 2 != a)
      breach(n, "H certificate missing or mismatched");

    if (n < p.levels && p.N[i + 1] * a <= 3 * p.N[i]) breach(n, "N_{n+1} alpha_n > 3 pi N_n fails");
    if (n < p.levels) {
      Real gap = sub(p.logR[i + 1], p.logR[i], Round::Down, p.bits + 64);
      if (gap <= 1.0) breach(n, "log r_{n+1} - log r_n must exceed 1");
    }

    Real g = p.growth.eval_log(p.logR[i], Round::Down, p.bits + 16);
    Real need(mpz_class(3 * p.N[i]), p.bits + 16, Round::Up);
    if (g <= need) breach(n, "G(r_n) > 3 N_n fails");

    // log lambda_n + N_n log r_n <= -log 8, with the left side formed exactly
    const mpfr_prec_t vb = p.logLambda[i].bits() + p.logR[i].bits() +
                           static_cast<mpfr_prec_t>(mpz_sizeinbase(p.N[i].get_mpz_t(), 2)) + 16;
    Real lhs = add(p.logLambda[i], mul_z(p.logR[i], p.N[i], Round::Up, vb), Round::Up, vb);
    if (lhs > neg(log8(vb, Round::Up))) breach(n, "lambda_n r_n^{N_n} exceeds 1/8");
  }
}

}  // namespace asymval
