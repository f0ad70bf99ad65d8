#pragma once

#include <gmpxx.h>

#include <vector>

#include "asymval/certify.hpp"
#include "asymval/growth.hpp"
#include "asymval/numerics/precision.hpp"

namespace asymval {

/// Numerical skeleton of phi = sum beta_n (phi0(lambda_n z^{N_n}))^n.
///
/// Per-level vectors are 0-based: entry n-1 belongs to level n. The stored
/// logR and logLambda values *define* r_n and lambda_n; they are exact dyadics.
struct FunctionPlan {
  int levels = 0;
  GrowthSpec growth;
  mpfr_prec_t bits = PrecisionContext::kDefaultBits;
  int granularity_log2 = 12;

  RationalAngle k_half;  ///< half-angle of K, in units of pi
  SectorCertificate k_cert;
  std::vector<RationalAngle> alphas;  ///< alpha_n in units of pi
  std::vector<SectorCertificate> h_certs;

  std::vector<mpz_class> N;
  std::vector<Real> logR;       ///< rounded up at `bits`
  std::vector<Real> logLambda;  ///< -log 8 - N_n log r_n, rounded down

  const RationalAngle& alpha(int n) const { return alphas.at(n - 1); }
  const mpz_class& N_at(int n) const { return N.at(n - 1); }
  const Real& logR_at(int n) const { return logR.at(n - 1); }
  const Real& logLambda_at(int n) const { return logLambda.at(n - 1); }
};

/// Granularity used by build_plan when it runs the alpha search itself.
int default_granularity(int levels);

/// Requires levels >= 2 and a validated growth spec. Throws CertMissing when
/// `search` is shallower than `levels`, GrowthTooSlow from inverse_growth.
FunctionPlan build_plan(const GrowthSpec& growth, int levels, const AlphaSearch& search,
                        const PrecisionContext& ctx);
FunctionPlan build_plan(const GrowthSpec& growth, int levels, const PrecisionContext& ctx);

/// Re-checks every plan invariant; throws PlanInvariantError on the first breach.
void verify_plan(const FunctionPlan& plan);

}  // namespace asymval
