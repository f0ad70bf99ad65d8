#pragma once

#include <compare>
#include <string>
#include <vector>

#include "asymval/numerics/real.hpp"

namespace asymval {

/// Nonnegative magnitude exp^level(mantissa).
///
/// Normal form: level 0 with m < 1e8, or level >= 1 with log(1e8) <= m < 1e8.
/// Mantissas are doubles rounded up, so a TowerMag is always an upper bound on
/// whatever it was built from.
class TowerMag {
 public:
  static constexpr double kCut = 1e8;

  TowerMag() = default;
  /// Normalises (level, m); m is taken as an upper bound.
  static TowerMag make(int level, double mantissa);
  static TowerMag from_value_upper(const Real& v);
  /// Upper bound for e^L given an upper bound L.
  static TowerMag from_log_upper(const Real& log_value);
  /// Upper bound for e^{e^LL} given an upper bound LL.
  static TowerMag from_loglog_upper(const Real& loglog_value);

  int level() const { return level_; }
  double mantissa() const { return m_; }
  bool is_zero() const { return level_ == 0 && m_ == 0.0; }
  std::string str() const;

  friend bool operator==(const TowerMag&, const TowerMag&) = default;
  friend std::strong_ordering operator<=>(const TowerMag& a, const TowerMag& b);

 private:
  int level_ = 0;
  double m_ = 0.0;
};

/// Certified upper bound on the sum.
TowerMag tower_sum_upper(const std::vector<TowerMag>& xs);
/// Enclosure of log log x. Throws DomainError if x <= e, RangeError if too tall.
Interval tower_loglog(const TowerMag& x, mpfr_prec_t bits = 128);

}  // namespace asymval
