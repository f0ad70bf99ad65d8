#pragma once

// The base function
//   phi0(z) = 1/2 [ (2/sqrt(pi)) int_0^z e^{-w^2} dw - e^{-z^2} + 1 ].

#include "asymval/numerics/ball.hpp"
#include "asymval/numerics/log_polar.hpp"
#include "asymval/numerics/precision.hpp"

namespace asymval {

enum class Regime { Taylor, Midrange, Farfield };

const char* regime_name(Regime r);

struct Phi0Value {
  Ball value;
  Regime regime = Regime::Taylor;
  double input_logmod = 0.0;
};

/// phi0 near a limit: |phi0(w) - near_limit| <= exp(log_deviation).
struct FarFieldForm {
  int near_limit = 1;
  Real log_deviation;

  /// The disc around the limit as a Ball (the radius underflows upward, never to 0).
  Ball as_ball(mpfr_prec_t bits) const;
};

namespace phi0 {

/// |z| at or below this uses the Taylor series with the crude remainder.
inline const mpq_class kTaylorCut{1, 8};
/// Split between the series and the far-field bound.
constexpr double kFarRadius = 12.0;
/// Largest |z| the series is still run at outside the far-field cones.
constexpr double kSeriesMax = 40.0;
/// Far-field cones stop this far (radians) short of pi/4 from the axis.
constexpr double kConeMargin = 1.0 / 64.0;

/// Plain series value at an exact point, using the regime's remainder bound.
Ball series_at(const Real& x, const Real& y, mpfr_prec_t bits, bool taylor_remainder);

/// Upper bound on sup |phi0'| over the ball.
Real deriv_sup(const Ball& z);

}  // namespace phi0

/// Certified enclosure of phi0(z). Throws PrecisionExhausted when the
/// evaluation at the centre cannot meet about `bits - 24` bits.
Phi0Value phi0_eval(const Ball& z, const PrecisionContext& ctx);

/// Far-field bound for |w| > 12 inside |arg w| <= pi/4 - 1/64 (limit 1) or
/// |arg w - pi| <= pi/4 - 1/64 (limit 0). Throws SectorError otherwise.
FarFieldForm phi0_far(const LogPolar& w, const PrecisionContext& ctx);

/// Same bound with the angular deviation beta from the axis supplied as an
/// upper bound in radians.
Real phi0_far_log_bound(const Real& log_r_lower, const Real& beta_upper, mpfr_prec_t bits);

/// Enclosure of phi0'(z) = e^{-z^2}(z + 1/sqrt(pi)).
Ball phi0_deriv(const Ball& z, const PrecisionContext& ctx);

/// Ball containing 1/sqrt(pi).
Ball inv_sqrt_pi(mpfr_prec_t bits);

}  // namespace asymval
