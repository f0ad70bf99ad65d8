#pragma once

#include <array>
#include <string>
#include <vector>

#include "asymval/numerics/tower.hpp"
#include "asymval/phi0.hpp"
#include "asymval/plan.hpp"
#include "asymval/sectors.hpp"
#include "asymval/targets.hpp"

namespace asymval {

/// A direction span [lo, hi] in units of pi; lo == hi is a single ray.
struct Arc {
  mpq_class lo;
  mpq_class hi;

  static Arc ray(const RationalAngle& theta) { return {theta.q(), theta.q()}; }
  static Arc of(const SectorInterval& s) { return {s.lo, s.hi}; }
  bool is_ray() const { return lo == hi; }
};

struct RayPlan {
  TargetSelection selection;
  FunctionPlan plan;
  int depth = 0;
  AddressBits bits;
  SectorInterval sector;  ///< deepest generation
  RationalAngle theta;
  mpq_class theta_width;  ///< units of pi
};

/// Ray for the selection at full plan depth. Throws DepthInsufficient when
/// max(A) exceeds the plan.
RayPlan make_ray(const TargetSelection& selection, const FunctionPlan& plan);

/// log r = -inf (r = 0) is allowed everywhere a log radius is taken.
Real log_r_zero(mpfr_prec_t bits = 64);

/// Enclosure of phi_n = phi0(lambda_n z^{N_n})^n for every z = r e^{i pi t}, t in arc.
/// Throws UncertifiedAngle when |w| is huge and arg w is outside both cones.
Ball phi_n_eval(int n, const Real& log_r, const Arc& arc, const FunctionPlan& plan, const PrecisionContext& ctx);
inline Ball phi_n_eval(int n, const Real& log_r, const RationalAngle& theta, const FunctionPlan& plan,
                       const PrecisionContext& ctx) {
  return phi_n_eval(n, log_r, Arc::ray(theta), plan, ctx);
}

/// First n with log r_n > log r; throws TailUnavailable past the plan.
int truncation_index(const Real& log_r, const FunctionPlan& plan);

struct PartialSum {
  Ball value;
  Real tail;  ///< bound on sum_{p > n_eval} |beta_p phi_p|
  int n_eval = 0;
  std::vector<Ball> terms;  ///< phi_1 .. phi_{n_eval}
};

/// sum_{n <= n_eval} beta_n phi_n on the arc, plus the (1/2)^{n_eval} tail.
/// Requires log r < log r_{n_eval}; n_eval = 0 picks truncation_index.
PartialSum phi_partial(const Real& log_r, const Arc& arc, const FunctionPlan& plan, int n_eval,
                       const PrecisionContext& ctx);

struct RayRow {
  Real log_r;
  Ball phi;  ///< hull over the deepest sector at this radius
  Real evaluated_radius{64};
  Real truncation_tail{64};
  Real theta_slack{64};
  Real distance{64};  ///< certified upper bound on |phi - omega|
  int n_eval = 0;
  std::vector<Ball> terms;
  bool ok = false;
  std::string error;
};

/// One row per grid point; failures are recorded per row.
std::vector<RayRow> ray_table(const RayPlan& ray, const std::vector<Real>& log_r_grid, const PrecisionContext& ctx);

/// Radii log r = 10^{k / per_decade}: the grid used by the radius searches.
std::vector<Real> log_decade_grid(double log_r_from, double log_r_to, int per_decade, mpfr_prec_t bits = 64);

struct Lemma1Result {
  Real log_R;
  int n0 = 0;
  /// |beta||phi-1| over A<=n0, |sum - omega|, A>n0 terms, off-A <= n0, off-A > n0 with tail.
  std::array<Real, 5> pieces;
  int per_decade = 40;
};

/// Smallest grid radius where all five pieces are < epsilon/5.
/// Throws DepthInsufficient when the plan depth cannot reach epsilon.
Lemma1Result lemma1_radius(const RayPlan& ray, double epsilon, const PrecisionContext& ctx, int per_decade = 40);
/// The five pieces at one radius (log r < log r_L).
std::array<Real, 5> lemma1_pieces(const RayPlan& ray, int n0, const Real& log_r, const PrecisionContext& ctx);

/// Upper bound on M(r, phi) valid for any continuation of the plan; needs
/// 1 < log r < log r_L + 1.
TowerMag maxmod_upper(const Real& log_r, const FunctionPlan& plan, const PrecisionContext& ctx);

struct GrowthRow {
  Real log_r;
  Real loglog_bound{64};  ///< upper bound on log log max(M, e)
  Real budget{64};        ///< G(r) log r, rounded down
  TowerMag maxmod;
  bool pass = false;
};

std::vector<GrowthRow> growth_check(const FunctionPlan& plan, const std::vector<Real>& log_r_grid,
                                    const PrecisionContext& ctx);

struct InfinityCheck {
  Real log_r;
  Real certified_re_lower{64};  ///< lower bound on Re phi along the ray
  Real partial_re_lower{64};    ///< lower bound on Re sum_{n in A, n <= n0} beta_n phi_n
  Real off_a_bound{64};         ///< sum (3/4)^n over n not in A
  int n0 = 0;
  mpq_class partial_beta_sum;
  TargetSelection selection;
};

/// Needs M > 3 and a plan deep enough that sum_{A, n <= n0} beta_n > 4M.
InfinityCheck infinity_ray_check(double M, const FunctionPlan& plan, const PrecisionContext& ctx,
                                 int per_decade = 40);

/// The infinity address truncated to the plan depth.
TargetSelection infinity_selection(const FunctionPlan& plan);

}  // namespace asymval
