// asymval: build plans, pick targets, tabulate rays, growth and the Cantor set.

#include <asymval/errors.hpp>
#include <asymval/evaluate.hpp>
#include <asymval/io.hpp>

#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

using namespace asymval;

namespace {

enum Exit { kOk = 0, kInternal = 1, kInput = 2, kCert = 3, kDepth = 4, kEpsilon = 5 };

struct Failure {
  int code;
  std::string message;
};

struct Grid {
  std::vector<Real> log_r;
};

// A:B:STEPS, endpoints inclusive, linear in log r (geometric when asked).
// A may be -inf: the first row is then r = 0 and the rest are spaced as if A were 0.
Grid parse_grid(const std::string& text, bool geometric, mpfr_prec_t bits) {
  const auto c1 = text.find(':'), c2 = text.rfind(':');
  if (c1 == std::string::npos || c1 == c2) throw InvalidArgument("--logr expects A:B:STEPS");
  const std::string a = text.substr(0, c1), b = text.substr(c1 + 1, c2 - c1 - 1), s = text.substr(c2 + 1);
  long steps = 0;
  try {
    size_t used = 0;
    steps = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
  } catch (const std::exception&) {
    throw InvalidArgument("STEPS must be an integer");
  }
  if (steps < 1) throw InvalidArgument("STEPS must be >= 1");
  const bool from_zero = a == "-inf";
  const mpq_class A = from_zero ? mpq_class(0) : parse_rational(a), B = parse_rational(b);
  if (B < A) throw InvalidArgument("--logr needs A <= B");
  Grid g;
  if (geometric) {
    if (from_zero || A <= 0) throw InvalidArgument("geometric spacing needs A > 0");
    const Real la = log(Real(A, bits, Round::Nearest), Round::Nearest),
               lb = log(Real(B, bits, Round::Nearest), Round::Nearest);
    for (long i = 0; i < steps; ++i) {
      const double t = steps == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(steps - 1);
      Real x = add(la, mul(sub(lb, la, Round::Nearest), Real(t, bits), Round::Nearest), Round::Nearest);
      g.log_r.push_back(exp(x, Round::Nearest));
    }
    return g;
  }
  for (long i = 0; i < steps; ++i) {
    if (i == 0 && from_zero) {
      g.log_r.push_back(log_r_zero(bits));
      continue;
    }
    const mpq_class x = steps == 1 ? A : A + (B - A) * mpq_class(i, steps - 1);
    g.log_r.push_back(Real(x, bits, Round::Nearest));
  }
  return g;
}

PrecisionContext precision(std::optional<long> bits) {
  return bits ? PrecisionContext::with_bits(*bits) : PrecisionContext::from_env();
}

std::string csv_real(const Real& r) { return r.to_short(17); }

void emit(const std::string& out_path, const std::string& content, std::ostringstream& stdout_buf) {
  if (out_path.empty())
    stdout_buf << content;
  else
    write_file_atomic(out_path, content);
}

struct BuildArgs {
  std::string growth, out;
  int levels = 4;
  std::optional<long> bits;
  std::optional<int> granularity;
};

void run_build(const BuildArgs& a, std::ostringstream& so) {
  const GrowthSpec g = GrowthSpec::parse(a.growth);
  g.validate();
  if (a.levels < 2) throw InvalidArgument("--levels must be >= 2");
  const auto ctx = precision(a.bits);
  const int gran = a.granularity.value_or(default_granularity(a.levels));
  const AlphaSearch search = find_alphas(a.levels, ctx, gran);
  const FunctionPlan plan = build_plan(g, a.levels, search, ctx);
  if (!a.out.empty()) save_plan(a.out, plan);
  so << "growth " << g.str() << "  K half-angle " << rational_str(plan.k_half.q()) << " pi\n";
  so << "n,alpha_over_pi,N,log_r,log_lambda\n";
  for (int n = 1; n <= plan.levels; ++n)
    so << n << ',' << rational_str(plan.alpha(n).q()) << ',' << plan.N_at(n).get_str() << ','
       << plan.logR_at(n).to_short(12) << ',' << plan.logLambda_at(n).to_short(12) << '\n';
}

struct TargetArgs {
  std::string fn, omega, in_sector, out;
  bool infinity = false;
  std::optional<double> tol;
};

void run_target(const TargetArgs& a, std::ostringstream& so) {
  const FunctionPlan plan = load_plan(a.fn);
  TargetSelection sel;
  if (a.infinity) {
    if (!a.in_sector.empty()) throw InvalidArgument("--in-sector cannot be combined with --infinity");
    sel = infinity_selection(plan);
  } else if (a.omega.empty()) {
    throw InvalidArgument("give --omega or --infinity");
  } else if (a.tol) {
    if (!a.in_sector.empty()) throw InvalidArgument("--in-sector needs an exact --omega");
    sel = select_target_approx(GaussianRational::parse(a.omega).to_complex(), *a.tol);
  } else {
    const GaussianRational omega = GaussianRational::parse(a.omega);
    if (a.in_sector.empty()) {
      sel = select_target(omega);
    } else {
      if (static_cast<int>(a.in_sector.size()) > plan.levels)
        throw DepthInsufficient("prefix of length " + std::to_string(a.in_sector.size()) + " but the plan has " +
                                std::to_string(plan.levels) + " levels");
      std::set<long> in, out;
      for (size_t j = 0; j < a.in_sector.size(); ++j) {
        const char c = a.in_sector[j];
        if (c != '0' && c != '1') throw InvalidArgument("--in-sector takes a 0/1 string");
        (c == '1' ? in : out).insert(static_cast<long>(j + 1));
      }
      sel = constrained_target(omega, in, out);
    }
  }
  const RayPlan ray = make_ray(sel, plan);
  save_ray(a.out, ray);
  std::string bits;
  for (int b : ray.bits) bits += b ? '1' : '0';
  so << "omega " << sel.omega.str() << (sel.exact ? "" : " (approximate)") << "\n";
  so << "achieved " << sel.achieved.str() << "\nA";
  for (long n : sel.A) so << ' ' << n;
  so << "\naddress " << bits << "\ntheta " << rational_str(ray.theta.q()) << " pi\ntheta_width "
     << rational_str(ray.theta_width) << " pi\n";
}

struct RayArgs {
  std::string ray, logr, out;
  std::optional<double> eps;
  int per_decade = 40;
  bool geometric = false;
};

void run_ray(const RayArgs& a, std::ostringstream& so) {
  const RayPlan ray = load_ray(a.ray);
  const auto ctx = PrecisionContext::from_env();
  if (a.eps && !(*a.eps > 0)) throw InvalidArgument("--eps must be positive");
  const Grid grid = parse_grid(a.logr, a.geometric, 64);
  std::optional<Lemma1Result> lem;
  if (a.eps) {
    try {
      lem = lemma1_radius(ray, *a.eps, ctx, a.per_decade);
    } catch (const DepthInsufficient& e) {
      throw Failure{kEpsilon, e.what()};
    }
  }
  std::ostringstream csv;
  csv << "log_r,re,im,err,dist,pass\n";
  for (const auto& row : ray_table(ray, grid.log_r, ctx)) {
    csv << csv_real(row.log_r) << ',';
    if (!row.ok) {
      csv << ",,,,false\n";
      continue;
    }
    Real err = add(add(row.evaluated_radius, row.truncation_tail, Round::Up), row.theta_slack, Round::Up);
    const bool pass = !a.eps || row.distance < *a.eps;
    csv << csv_real(row.phi.re()) << ',' << csv_real(row.phi.im()) << ',' << csv_real(err) << ','
        << csv_real(row.distance) << ',' << (pass ? "true" : "false") << '\n';
  }
  emit(a.out, csv.str(), so);
  if (lem) {
    std::ostringstream line;
    line << "lemma1 eps=" << *a.eps << " log_R=" << lem->log_R.to_short(17) << " n0=" << lem->n0 << " pieces";
    for (const auto& p : lem->pieces) line << ' ' << p.to_short(6);
    line << '\n';
    if (a.out.empty())
      std::cerr << line.str();
    else
      so << line.str();
  }
}

struct GrowthArgs {
  std::string fn, logr, out;
  bool geometric = false;
};

void run_growth(const GrowthArgs& a, std::ostringstream& so) {
  const FunctionPlan plan = load_plan(a.fn);
  const auto ctx = PrecisionContext::from_env();
  const Grid grid = parse_grid(a.logr, a.geometric, 64);
  std::ostringstream csv;
  csv << "log_r,loglog_bound,budget,pass\n";
  for (const auto& row : growth_check(plan, grid.log_r, ctx))
    csv << csv_real(row.log_r) << ',' << csv_real(row.loglog_bound) << ',' << csv_real(row.budget) << ','
        << (row.pass ? "true" : "false") << '\n';
  emit(a.out, csv.str(), so);
}

struct CantorArgs {
  std::string fn, out;
  int depth = 1;
};

void run_cantor(const CantorArgs& a, std::ostringstream& so) {
  const FunctionPlan plan = load_plan(a.fn);
  std::ostringstream csv;
  csv << "lo_numer,lo_denom,hi_numer,hi_denom,generation\n";
  for (const auto& s : cantor_intervals(plan, a.depth))
    csv << s.lo.get_num().get_str() << ',' << s.lo.get_den().get_str() << ',' << s.hi.get_num().get_str() << ','
        << s.hi.get_den().get_str() << ',' << s.generation << '\n';
  emit(a.out, csv.str(), so);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified construction of entire functions with prescribed asymptotic values"};
  app.require_subcommand(1);

  BuildArgs ba;
  auto* build = app.add_subcommand("build", "certify sectors and write a plan file");
  build->add_option("--growth", ba.growth, "pow:k[,c] | afflog:c1,c0 | table:FILE")->required();
  build->add_option("--levels", ba.levels, "plan depth (>= 2)")->capture_default_str();
  build->add_option("--precision", ba.bits, "working bits (default: $ASYMVAL_PRECISION or 128)");
  build->add_option("--granularity", ba.granularity, "dyadic search granularity log2");
  build->add_option("--out", ba.out, "plan file to write");

  TargetArgs ta;
  auto* target = app.add_subcommand("target", "choose A and the ray for a target value");
  target->add_option("--fn", ta.fn, "plan file")->required();
  auto* om = target->add_option("--omega", ta.omega, "target x+iy (p/q or exact decimals)");
  auto* inf = target->add_flag("--infinity", ta.infinity, "ray along which phi -> infinity");
  om->excludes(inf);
  target->add_option("--tol", ta.tol, "approximate the target greedily within this tolerance")->needs(om);
  target->add_option("--in-sector", ta.in_sector, "force the address prefix, e.g. 01");
  target->add_option("--out", ta.out, "ray file to write")->required();

  RayArgs ra;
  auto* ray = app.add_subcommand("ray", "tabulate phi along a target ray");
  ray->add_option("--ray", ra.ray, "ray file")->required();
  ray->add_option("--logr", ra.logr, "A:B:STEPS in log r; A may be -inf")->required();
  ray->add_option("--eps", ra.eps, "also certify the radius beyond which |phi - omega| < eps");
  ray->add_option("--per-decade", ra.per_decade, "radius search grid density")->capture_default_str();
  ray->add_flag("--geometric", ra.geometric, "space rows geometrically in log r");
  ray->add_option("--out", ra.out, "CSV file (default stdout)");

  GrowthArgs ga;
  auto* growth = app.add_subcommand("growth", "check log log M(r) < G(r) log r");
  growth->add_option("--fn", ga.fn, "plan file")->required();
  growth->add_option("--logr", ga.logr, "A:B:STEPS in log r, A > 1")->required();
  growth->add_flag("--geometric", ga.geometric, "space rows geometrically in log r");
  growth->add_option("--out", ga.out, "CSV file (default stdout)");

  CantorArgs ca;
  auto* cantor = app.add_subcommand("cantor", "exact sector intervals of one generation");
  cantor->add_option("--fn", ca.fn, "plan file")->required();
  cantor->add_option("--depth", ca.depth, "generation")->required();
  cantor->add_option("--out", ca.out, "CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << e.what() << '\n';
    return kInput;
  }

  std::ostringstream so;
  int code = kOk;
  try {
    if (*build) run_build(ba, so);
    if (*target) run_target(ta, so);
    if (*ray) run_ray(ra, so);
    if (*growth) run_growth(ga, so);
    if (*cantor) run_cantor(ca, so);
  } catch (const Failure& f) {
    std::cerr << "asymval: " << f.message << '\n';
    code = f.code;
  } catch (const DepthInsufficient& e) {
    std::cerr << "asymval: " << e.what() << '\n';
    code = kDepth;
  } catch (const SearchExhausted& e) {
    std::cerr << "asymval: certification failed: " << e.what() << '\n';
    code = kCert;
  } catch (const CertMissing& e) {
    std::cerr << "asymval: certification failed: " << e.what() << '\n';
    code = kCert;
  } catch (const PlanInvariantError& e) {
    std::cerr << "asymval: " << e.what() << '\n';
    code = kCert;
  } catch (const UncertifiedAngle& e) {
    std::cerr << "asymval: " << e.what() << '\n';
    code = kCert;
  } catch (const ConstructionError& e) {
    std::cerr << "asymval: " << e.what() << '\n';
    code = kCert;
  } catch (const Error& e) {
    std::cerr << "asymval: " << e.what() << '\n';
    code = kInput;
  } catch (const std::exception& e) {
    std::cerr << "asymval: internal error: " << e.what() << '\n';
    code = kInternal;
  }
  if (code == kOk) std::cout << so.str();
  return code;
}
