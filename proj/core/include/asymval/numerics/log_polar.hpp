#pragma once

#include <variant>

#include "asymval/numerics/ball.hpp"
#include "asymval/numerics/rational_angle.hpp"

namespace asymval {

/// Nonzero complex number exp(log_mod) e^{i arg}. Never overflows: the modulus
/// lives on the log scale.
struct LogPolar {
  Interval log_mod;
  /// Exact rational multiple of pi, or an enclosure in radians.
  std::variant<RationalAngle, Interval> arg;

  static constexpr double kDefaultCutoff = 1e6;

  LogPolar() = default;
  LogPolar(Interval lm, RationalAngle a) : log_mod(std::move(lm)), arg(std::move(a)) {}
  LogPolar(Interval lm, Interval a) : log_mod(std::move(lm)), arg(std::move(a)) {}

  bool has_exact_arg() const { return std::holds_alternative<RationalAngle>(arg); }
  const RationalAngle& exact_arg() const { return std::get<RationalAngle>(arg); }
  /// Enclosure of the argument in radians.
  Interval arg_radians(mpfr_prec_t bits) const;
};

LogPolar logpolar_mul(const LogPolar& a, const LogPolar& b);
/// k-th power; exact arguments stay exact and are reduced mod 2 pi.
LogPolar logpolar_pow_int(const LogPolar& w, const mpz_class& k);
/// Throws RangeError if |log_mod| exceeds `cutoff`.
Ball logpolar_to_ball(const LogPolar& w, mpfr_prec_t bits, double cutoff = LogPolar::kDefaultCutoff);

}  // namespace asymval
