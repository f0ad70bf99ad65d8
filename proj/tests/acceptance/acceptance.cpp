// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <unistd.h>
#include <asymval/errors.hpp>
#include <asymval/io.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

#include "oracles.hpp"

using namespace asymval;

namespace {

const PrecisionContext ctx{};

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond && pass) detail << "failed: " << what << "; ";
    pass = pass && cond;
  }
};

double up(const Real& x) { return x.to_double(Round::Up); }

std::vector<Real> geometric(double from, double to, int count) {
  std::vector<Real> out;
  for (int i = 0; i < count; ++i) out.emplace_back(from * std::pow(to / from, i / (count - 1.0)), 64);
  return out;
}

void phi0_oracle(Outcome& o) {
  std::uniform_real_distribution<double> u(-10, 10);
  int n = 0, bad = 0;
  while (n < 500) {
    const double x = u(oracle::rng()), y = u(oracle::rng());
    if (std::hypot(x, y) > 10) continue;
    ++n;
    Ball v = phi0_eval(Ball(x, y, 128), ctx).value;
    auto q = oracle::phi0_quadrature(x, y, 128);
    if (!v.overlaps(Ball(q.re, q.im, q.err))) ++bad;
  }
  o.require(bad == 0, std::to_string(bad) + " of 500 disagree");
  Ball z = phi0_eval(Ball(0.0, 0.0, 128), ctx).value;
  o.require(z.re().is_zero() && z.im().is_zero() && z.rad().is_zero(), "phi0(0) = 0 exactly");
  PrecisionContext wide;
  wide.bits = 256;
  Ball p = phi0_eval(Ball(10.0, 0.0, 256), wide).value, m = phi0_eval(Ball(-10.0, 0.0, 256), wide).value;
  const Real dp = add(abs(add_d(p.re(), -1.0, Round::Up)), p.rad(), Round::Up);
  const Real dm = add(abs(m.re()), m.rad(), Round::Up);
  auto qp = oracle::phi0_quadrature(10, 0, 256), qm = oracle::phi0_quadrature(-10, 0, 256);
  o.require(dp < 1e-40 && dm < 1e-40, "engine within 1e-40 of the limits at +-10");
  o.require(abs(add_d(qp.re, -1.0, Round::Up)) < 1e-40 && abs(qm.re) < 1e-40, "oracle within 1e-40 at +-10");
  o.detail << "500 points agree; |phi0(10)-1| <= " << dp.to_short(3) << ", |phi0(-10)| <= " << dm.to_short(3);
}

void derivative_order(Outcome& o) {
  PrecisionContext c;
  c.bits = 256;
  std::uniform_real_distribution<double> u(-3, 3);
  double worst = 1e9;
  for (int i = 0; i < 20; ++i) {
    const double x = u(oracle::rng()), y = u(oracle::rng());
    const Ball d = phi0_deriv(Ball(x, y, 256), c);
    std::vector<double> err;
    for (int k = 0; k < 5; ++k) {
      const double h = std::ldexp(1.0, -6 - k);
      Ball fp = phi0_eval(Ball(x + h, y, 256), c).value, fm = phi0_eval(Ball(x - h, y, 256), c).value;
      Ball diff = scale(fp - fm, Real(1 / (2 * h), 256));
      err.push_back((diff.center() - d.center()).abs_upper().to_double(Round::Nearest));
    }
    for (size_t k = 1; k < err.size(); ++k) worst = std::min(worst, std::log2(err[k - 1] / err[k]));
  }
  o.require(worst >= 1.9, "observed order " + std::to_string(worst));
  o.detail << "min observed order " << worst << " over 20 points, 5 steps";
}

// |phi0| and |Arg phi0| on a 10x denser grid than the certificate's.
void sample_certificate(Outcome& o, const SectorCertificate& c) {
  const bool K = c.kind == CertKind::KBound;
  const double centre = K ? M_PI : 0.0, half = c.half_angle.to_double();
  const double step = c.grid_step / 10, rmax = 2 * 12.0;
  double mod = 0, arg = 0;
  for (int k = 0; k <= 10; ++k) {
    const double t = centre - half + 2 * half * k / 10;
    for (double r = step; r <= rmax; r += step) {
      auto v = oracle::phi0(std::polar(r, t));
      if (!v) {
        o.require(false, "oracle unavailable");
        return;
      }
      mod = std::max(mod, std::abs(*v));
      arg = std::max(arg, std::fabs(std::arg(*v)));
    }
  }
  const double slack = 1e-14;
  o.require(mod <= up(c.sup_mod_bound) + slack, "sampled |phi0| above the certified bound");
  if (K) {
    o.require(mod < 0.75, "sampled |phi0| >= 3/4 on K");
  } else {
    o.require(mod <= std::pow(2.0, 1.0 / c.n), "sampled |phi0| above 2^(1/n)");
    o.require(c.sup_arg_bound && arg <= up(*c.sup_arg_bound) + slack, "sampled Arg above the certified bound");
    o.require(arg < M_PI / (4 * c.n), "sampled Arg above pi/4n");
  }
}

void certification(Outcome& o) {
  const AlphaSearch s = find_alphas(4, ctx);
  o.require(s.k_cert.certified() && s.k_half.q() >= mpq_class(1, 1024), "K half-angle >= pi/2^10");
  o.require(s.alphas.size() == 4, "four alphas");
  for (size_t i = 0; i < s.alphas.size(); ++i) {
    o.require(s.h_certs[i].certified(), "H certificate");
    o.require(i == 0 ? s.alphas[0].q() < 2 * s.k_half.q() : s.alphas[i].q() < s.alphas[i - 1].q(),
              "strictly decreasing");
  }
  sample_certificate(o, s.k_cert);
  for (const auto& c : s.h_certs) sample_certificate(o, c);
  o.detail << "K half " << s.k_half.str() << " pi; alphas";
  for (const auto& a : s.alphas) o.detail << ' ' << a.str();
  o.detail << "; 5 certificates resampled";
}

void sector_algebra(Outcome& o) {
  const FunctionPlan& p = oracle::desk_plan("pow:1,1");
  int checks = 0;
  for (unsigned code = 0; code < 16; ++code) {
    AddressBits bits;
    for (int j = 3; j >= 0; --j) bits.push_back((code >> j) & 1);
    const auto chain = address_to_sector(bits, p);
    oracle::Interval ref = oracle::root(bits[0], p.alpha(1).q());
    for (int n = 1; n <= 4; ++n) {
      const auto& s = chain[static_cast<size_t>(n - 1)];
      if (n > 1) {
        ref = oracle::child(ref, bits[static_cast<size_t>(n - 1)], p.alpha(n).q(), p.N_at(n));
        const auto& parent = chain[static_cast<size_t>(n - 2)];
        o.require(parent.lo <= s.lo && s.hi <= parent.hi, "nesting");
      }
      o.require(s.lo == ref.lo && s.hi == ref.hi, "matches the scanning oracle");
      o.require(s.hi - s.lo == p.alpha(n).q() / p.N_at(n), "opening alpha_n / N_n");
      // endpoints times N_n, shifted by a multiple of 2, land on H_n or K_n
      const mpq_class a = p.alpha(n).q(), c = bits[static_cast<size_t>(n - 1)] ? mpq_class(0) : mpq_class(1);
      mpq_class k = (s.lo * p.N_at(n) - (c - a / 2)) / 2;
      k.canonicalize();
      o.require(k.get_den() == 1, "image of lo is an H/K endpoint mod 2pi");
      o.require(s.hi * p.N_at(n) - (c + a / 2) == 2 * k, "image of hi is the matching endpoint");
      checks += 4;
    }
  }
  o.detail << "16 addresses, " << checks << " exact identities";
}

void plan_invariants(Outcome& o) {
  for (const char* g : {"pow:1,1", "pow:2,1", "afflog:4,1"}) {
    const FunctionPlan& p = oracle::desk_plan(g);
    o.require(p.levels == 4 && p.N_at(1) == 1, "N_1 = 1");
    o.require(p.logR_at(1) >= 2.0, "log r_1 >= 2");
    for (int n = 1; n <= 4; ++n) {
      if (n < 4) {
        o.require(p.N_at(n + 1) * p.alpha(n).q() > 3 * p.N_at(n), "N_{n+1} alpha_n > 3 pi N_n");
        o.require(sub(p.logR_at(n + 1), p.logR_at(n), Round::Down, 256) > 1.0, "log-gap > 1");
      }
      const Real G = p.growth.eval_log(p.logR_at(n), Round::Down, 192);
      o.require(G > Real(mpz_class(3 * p.N_at(n)), 192, Round::Up), "G(r_n) > 3 N_n");
    }
    try {
      verify_plan(p);
    } catch (const PlanInvariantError& e) {
      o.require(false, e.what());
    }
    o.detail << g << " ok; ";
  }
}

void target_exactness(Outcome& o) {
  int distinct = 0;
  for (int i = 0; i < 100; ++i) {
    const GaussianRational w{oracle::random_rational(10, 97), oracle::random_rational(10, 97)};
    const TargetSelection s = select_target(w);
    GaussianRational sum{0, 0};
    for (long n : s.A) sum = sum + oracle::beta(n);
    o.require(sum == w && s.achieved == w, "select_target exact");

    std::uniform_int_distribution<int> bit(0, 1);
    std::set<long> in, out;
    for (long j = 1; j <= 2; ++j) (bit(oracle::rng()) ? in : out).insert(j);
    const TargetSelection c = constrained_target(w, in, out);
    GaussianRational csum{0, 0};
    for (long n : c.A) csum = csum + oracle::beta(n);
    const auto pre = c.bits_prefix(2);
    o.require(csum == w, "constrained_target exact");
    o.require(pre[0] == (in.count(1) ? 1 : 0) && pre[1] == (in.count(2) ? 1 : 0), "prefix honoured");

    const TargetSelection a = constrained_target(w, {2}, {}), b = constrained_target(w, {4}, {});
    o.require(a.A != b.A && a.achieved == b.achieved && a.achieved == w, "distinct forced sets, equal sums");
    distinct += a.A != b.A;
  }
  o.detail << "100 targets exact; " << distinct << " forced-set pairs distinct";
}

void ray_convergence(Outcome& o) {
  const FunctionPlan& p = oracle::desk_plan("pow:1,1");
  const RayPlan ray = make_ray(select_target({mpq_class(1, 2), 0}), p);
  const auto grid = geometric(0.25, p.logR_at(4).to_double(Round::Down) - 0.125, 40);
  const auto rows = ray_table(ray, grid, ctx);
  bool all_ok = true;
  int inside = 0;
  for (const auto& r : rows) {
    all_ok = all_ok && r.ok;
    if (!r.ok) continue;
    auto brute = oracle::phi_sum(p, r.log_r.to_double(Round::Nearest), ray.theta.q(), r.n_eval);
    o.require(brute.has_value(), "brute-force terms representable");
    if (brute && r.phi.inflated(Real(1e-8, 64)).contains(*brute)) ++inside;
  }
  o.require(all_ok, "every row evaluated");
  o.require(inside == 40, "brute force inside all 40 enclosures (" + std::to_string(inside) + ")");
  const Real& last = rows.back().distance;
  o.require(last < 0.3, "final distance < 0.3");
  for (size_t i = rows.size() - 10; i < rows.size(); ++i)
    o.require(rows[i].distance <= rows[i - 1].distance, "monotone over the last 10 rows");

  const Lemma1Result lem = lemma1_radius(ray, 0.5, ctx);
  PrecisionContext other;
  other.bits = 192;
  const auto pieces = lemma1_pieces(ray, lem.n0, lem.log_R, other);
  for (const auto& x : pieces) o.require(x < 0.1, "piece < eps/5 on re-verification");
  // piece (a) dominates the double-precision value of |beta_2||phi_2 - 1| on the ray
  auto b = oracle::phi_sum(p, lem.log_R.to_double(Round::Nearest), ray.theta.q(), 2);
  o.require(b && std::abs(*b - 0.5) <= up(pieces[0]) + 1e-12, "piece (a) bounds the brute-force value");
  o.detail << "final dist " << last.to_short(4) << "; lemma1 log_R " << lem.log_R.to_short(6);
}

void growth_inequality(Outcome& o) {
  for (const char* g : {"pow:1,1", "pow:2,1", "afflog:4,1"}) {
    const FunctionPlan& p = oracle::desk_plan(g);
    const auto grid = geometric(2.0, p.logR_at(4).to_double(Round::Down), 40);
    int pass = 0;
    for (const auto& r : growth_check(p, grid, ctx)) pass += r.pass;
    o.require(pass == 40, std::string(g) + " passes all 40 rows");
    FunctionPlan bad = p;
    const Real bump = log(Real(1e100, 128), Round::Down);
    for (auto& ll : bad.logLambda) ll = add(ll, bump, Round::Nearest);
    int fails = 0;
    for (const auto& r : growth_check(bad, grid, ctx)) fails += !r.pass;
    o.require(fails >= 1, std::string(g) + " mutation caught");
    o.detail << g << ": 40/40, mutation fails " << fails << "; ";
  }
}

void infinity_ray(Outcome& o) {
  const FunctionPlan p = build_plan(GrowthSpec::power(1, 1), 180, ctx);
  const InfinityCheck chk = infinity_ray_check(4.0, p, ctx);
  o.require(chk.certified_re_lower > 4.0, "certified Re phi > 4");
  o.require(chk.partial_beta_sum > 16, "partial beta sum > 4M");
  // off-A deduction: sum (3/4)^n over n <= L outside A plus (1/2)^n beyond L
  mpq_class off = 0, q = 1;
  std::set<long> A(chk.selection.A.begin(), chk.selection.A.end());
  for (long n = 1; n <= p.levels; ++n) {
    q *= mpq_class(3, 4);
    if (!A.count(n)) off += q;
  }
  mpq_class tail(1);
  for (int i = 0; i < p.levels; ++i) tail /= 2;
  off += tail;
  o.require(off <= 3 && chk.off_a_bound >= off.get_d() && chk.off_a_bound <= 3.0, "off-A deduction <= 3");
  // recompute the A-part at another precision
  PrecisionContext other;
  other.bits = 192;
  const RayPlan ray = make_ray(chk.selection, p);
  Real lower(0L, 64);
  for (long n : chk.selection.A) {
    if (n > chk.n0) break;
    Ball t = phi_n_eval(static_cast<int>(n), chk.log_r, Arc::of(ray.sector), p, other);
    lower = add(lower, mul_q(sub(t.re(), t.rad(), Round::Down), beta(n).re, Round::Down), Round::Down);
  }
  o.require(lower > 8.0, "A-part > 2M on re-evaluation");
  o.require(sub(lower, Real(3L, 64), Round::Down) > 4.0, "2M - 3 > M margin");
  o.detail << "n0 " << chk.n0 << ", log r " << chk.log_r.to_short(8) << ", Re phi >= "
           << chk.certified_re_lower.to_short(6) << " (off-A " << off.get_d() << ")";
}

void determinism(Outcome& o) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("asymval_accept_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  for (const char* g : {"pow:1,1", "afflog:4,1"}) {
    const FunctionPlan a = build_plan(GrowthSpec::parse(g), 4, ctx), b = build_plan(GrowthSpec::parse(g), 4, ctx);
    const std::string pa = (dir / "a.json").string(), pb = (dir / "b.json").string();
    save_plan(pa, a);
    save_plan(pb, b);
    o.require(read_file(pa) == read_file(pb), "plan files byte-identical");
    o.require(plan_to_json(load_plan(pa)) == read_file(pa), "plan load(save) exact");
    const RayPlan ra = make_ray(select_target({mpq_class(1, 2), 0}), a);
    const RayPlan rb = make_ray(select_target({mpq_class(1, 2), 0}), b);
    save_ray(pa, ra);
    save_ray(pb, rb);
    o.require(read_file(pa) == read_file(pb), "ray files byte-identical");
    o.require(ray_to_json(load_ray(pa)) == read_file(pa), "ray load(save) exact");
  }
  fs::remove_all(dir);
  o.detail << "2 plans and 2 rays rebuilt identically and round-tripped";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"phi0 oracle equivalence", phi0_oracle},
      {"derivative convergence order", derivative_order},
      {"sector certification", certification},
      {"exact sector algebra", sector_algebra},
      {"plan invariants", plan_invariants},
      {"target exactness", target_exactness},
      {"ray convergence", ray_convergence},
      {"growth inequality", growth_inequality},
      {"infinity ray", infinity_ray},
      {"determinism and round trip", determinism},
  };
  const std::vector<double> budget = {60, 0, 600, 0, 0, 0, 300, 0, 0, 0};
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget[i] > 0) o.require(secs < budget[i], "runtime " + std::to_string(secs) + " s");
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first << ": " << o.detail.str()
              << " (" << std::fixed << std::setprecision(2) << secs << " s)" << std::defaultfloat << std::endl;
  }
  std::cout << criteria.size() - static_cast<size_t>(failed) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
