#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

#include "asymval/numerics/real.hpp"

namespace asymval {

/// Growth budget G~(r): continuous, strictly increasing, unbounded, G~(0) > 0.
struct GrowthSpec {
  enum class Kind { Power, AffineLog, Table };

  Kind kind = Kind::Power;
  /// Power: {k, c} for c (1 + r)^k. AffineLog: {c1, c0} for c1 log(1 + r) + c0.
  std::vector<mpq_class> params;
  /// Table: (r, G) knots, piecewise linear, first segment extended down to 0.
  std::vector<std::pair<mpq_class, mpq_class>> points;

  static GrowthSpec power(const mpq_class& k, const mpq_class& c);
  static GrowthSpec affine_log(const mpq_class& c1, const mpq_class& c0);
  static GrowthSpec table(std::vector<std::pair<mpq_class, mpq_class>> pts);
  /// "pow:k[,c]", "afflog:c1,c0" or "table:FILE" (FILE holds "r G" pairs).
  static GrowthSpec parse(const std::string& text);

  /// Throws InvalidArgument when the kind-level guarantees fail.
  void validate() const;
  /// Canonical text form, e.g. "pow:1,1".
  std::string str() const;

  /// G~(r) rounded in direction `rnd`; r >= 0.
  Real eval(const Real& r, Round rnd, mpfr_prec_t bits) const;
  /// G~(e^t) for t possibly huge, rounded in direction `rnd`.
  Real eval_log(const Real& t, Round rnd, mpfr_prec_t bits) const;
  /// Largest r for which the spec is defined (infinite unless Table).
  bool bounded_domain() const { return kind == Kind::Table; }

  friend bool operator==(const GrowthSpec&, const GrowthSpec&) = default;
};

/// r with G~(r) in [y, y(1 + 2^-20)], rounded up; returned as log r when
/// r > 1 (flag set) or as r itself otherwise.
struct InverseGrowth {
  Real value;
  bool is_log = false;

  Real log_r(Round rnd, mpfr_prec_t bits) const;
};

/// Throws InvalidArgument if y <= G~(0), GrowthTooSlow if a table is exhausted.
InverseGrowth inverse_growth(const GrowthSpec& g, const Real& y, mpfr_prec_t bits);

}  // namespace asymval
