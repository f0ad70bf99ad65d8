#pragma once

#include <gmpxx.h>

#include <string>

#include "asymval/numerics/ball.hpp"

namespace asymval {

/// Exact angle q*pi. The stored q is kept in (-1, 1].
class RationalAngle {
 public:
  RationalAngle() = default;
  explicit RationalAngle(const mpq_class& q) : q_(reduce(q)) {}
  RationalAngle(long num, unsigned long den);

  /// q reduced into (-1, 1], i.e. the angle reduced mod 2 pi.
  static mpq_class reduce(mpq_class q);
  /// q reduced into [0, 2).
  static mpq_class reduce_positive(mpq_class q);
  static RationalAngle parse(const std::string& text);

  const mpq_class& q() const { return q_; }
  RationalAngle times(const mpz_class& k) const { return RationalAngle(q_ * k); }
  RationalAngle plus(const RationalAngle& o) const { return RationalAngle(q_ + o.q_); }
  RationalAngle negated() const { return RationalAngle(-q_); }

  /// Enclosure of the angle in radians.
  Interval radians(mpfr_prec_t bits) const;
  Ball unit(mpfr_prec_t bits) const { return unit_root(q_, bits); }
  double to_double() const;
  std::string str() const { return q_.get_str(); }

  friend bool operator==(const RationalAngle& a, const RationalAngle& b) { return a.q_ == b.q_; }

 private:
  mpq_class q_{0};
};

/// "p/q" text for a rational (no slash when the denominator is 1).
std::string rational_str(const mpq_class& q);
/// Parses "p/q", "p", or a finite decimal such as "-0.125" exactly.
mpq_class parse_rational(const std::string& text);

}  // namespace asymval
