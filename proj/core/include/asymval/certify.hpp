#pragma once

#include <optional>
#include <string>
#include <vector>

#include "asymval/numerics/precision.hpp"
#include "asymval/numerics/rational_angle.hpp"

namespace asymval {

enum class CertKind { KBound, HBound };
enum class CertStatus { Certified, Failed };

/// Record that |phi0| (and for H sectors |Arg phi0|) obeys its bound on a
/// whole infinite sector.
///
/// The sector is {r e^{i t} : |t - t0| <= half_angle}, t0 = pi for K and 0 for H.
/// Bounds are proved on the boundary rays (plus the small arc |z| = tiny_radius
/// for the argument) and carried inside by the maximum principle.
struct SectorCertificate {
  CertKind kind = CertKind::KBound;
  int n = 0;  ///< level for H sectors, 0 for K
  RationalAngle half_angle;
  double split_radius = 0.0;  ///< far-field bound used beyond this radius
  double grid_step = 0.0;     ///< initial uniform step on the boundary ray
  double tiny_radius = 0.0;   ///< H only: radius of the series zone around 0
  Real sup_mod_bound{64};
  std::optional<Real> sup_arg_bound;
  CertStatus status = CertStatus::Failed;
  std::string reason;
  long segments = 0;

  bool certified() const { return status == CertStatus::Certified; }
  /// 3/4 for K, 2^{1/n} for H (upper side of the allowed region).
  double mod_limit() const;
};

/// Certify |phi0| < 3/4 on the sector of the given half-angle about pi.
/// Requires 0 < half < 1/8 (in units of pi); throws InvalidArgument otherwise.
SectorCertificate certify_K(const RationalAngle& half, const PrecisionContext& ctx);

/// Certify |phi0| <= 2^{1/n} and |Arg phi0| < pi/(4n) on the sector about 0.
/// Requires 0 < half < 1/8 and half < 1/(8n).
SectorCertificate certify_H(int n, const RationalAngle& half, const PrecisionContext& ctx);

struct AlphaSearch {
  RationalAngle k_half;
  SectorCertificate k_cert;
  std::vector<RationalAngle> alphas;  ///< alpha_n = 2 * half_n, n = 1..n_max
  std::vector<SectorCertificate> h_certs;
  int granularity_log2 = 12;
};

/// Finds dyadic half-angles j / 2^g for K and H_1..H_nmax, strictly
/// decreasing, each certified. Throws SearchExhausted when j reaches 0.
AlphaSearch find_alphas(int n_max, const PrecisionContext& ctx, int granularity_log2 = 12);

/// Upper bound on |Arg| over a ball lying in Re > 0; nullopt if it does not.
std::optional<Real> arg_upper(const Ball& b);

}  // namespace asymval
