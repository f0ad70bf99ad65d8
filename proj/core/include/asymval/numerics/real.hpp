#pragma once

// Arbitrary-precision reals with explicit per-operation rounding.
//
// Every arithmetic helper takes the rounding direction as an argument; there
// is no ambient rounding mode. Certified upper bounds are computed with
// Round::Up, lower bounds with Round::Down.

#include <gmpxx.h>
#include <mpfr.h>

#include <compare>
#include <string>
#include <string_view>

namespace asymval {

enum class Round { Down, Up, Nearest };

constexpr mpfr_rnd_t to_mpfr(Round r) noexcept {
  switch (r) {
    case Round::Down:
      return MPFR_RNDD;
    case Round::Up:
      return MPFR_RNDU;
    case Round::Nearest:
      break;
  }
  return MPFR_RNDN;
}

constexpr Round opposite(Round r) noexcept {
  return r == Round::Up ? Round::Down : r == Round::Down ? Round::Up : Round::Nearest;
}

class Real {
 public:
  explicit Real(mpfr_prec_t bits = 64);
  Real(double v, mpfr_prec_t bits);
  Real(long v, mpfr_prec_t bits);
  Real(int v, mpfr_prec_t bits) : Real(static_cast<long>(v), bits) {}
  Real(const mpz_class& v, mpfr_prec_t bits, Round rnd);
  Real(const mpq_class& v, mpfr_prec_t bits, Round rnd);

  /// Parses decimal or hexadecimal-float text; throws FormatError on junk.
  static Real parse(std::string_view text, mpfr_prec_t bits, Round rnd = Round::Nearest);
  static Real pi(mpfr_prec_t bits, Round rnd);
  static Real ln2(mpfr_prec_t bits, Round rnd);
  static Real infinity(mpfr_prec_t bits, int sign = 1);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  mpfr_ptr raw() noexcept { return value_; }
  mpfr_srcptr raw() const noexcept { return value_; }
  mpfr_prec_t bits() const noexcept { return mpfr_get_prec(value_); }

  /// Same value rounded to a new precision.
  Real rounded(mpfr_prec_t bits, Round rnd) const;

  double to_double(Round rnd) const;
  long to_long(Round rnd) const;
  /// Exact decimal image of a finite value when read back at bits() precision.
  std::string to_decimal() const;
  /// Short human-readable form.
  std::string to_short(int digits = 12) const;

  bool is_zero() const noexcept { return mpfr_zero_p(value_) != 0; }
  bool is_nan() const noexcept { return mpfr_nan_p(value_) != 0; }
  bool is_inf() const noexcept { return mpfr_inf_p(value_) != 0; }
  bool is_finite() const noexcept { return mpfr_number_p(value_) != 0; }
  int sign() const noexcept { return mpfr_sgn(value_); }

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b);
  friend bool operator==(const Real& a, double b) { return mpfr_cmp_d(a.value_, b) == 0 && !a.is_nan(); }
  friend std::partial_ordering operator<=>(const Real& a, double b);

 private:
  mpfr_t value_;
};

// Arithmetic. bits == 0 means max of the operand precisions.
Real add(const Real& a, const Real& b, Round rnd, mpfr_prec_t bits = 0);
Real sub(const Real& a, const Real& b, Round rnd, mpfr_prec_t bits = 0);
Real mul(const Real& a, const Real& b, Round rnd, mpfr_prec_t bits = 0);
Real div(const Real& a, const Real& b, Round rnd, mpfr_prec_t bits = 0);
Real add_d(const Real& a, double b, Round rnd, mpfr_prec_t bits = 0);
Real mul_d(const Real& a, double b, Round rnd, mpfr_prec_t bits = 0);
Real mul_si(const Real& a, long b, Round rnd, mpfr_prec_t bits = 0);
Real div_si(const Real& a, long b, Round rnd, mpfr_prec_t bits = 0);
Real mul_z(const Real& a, const mpz_class& b, Round rnd, mpfr_prec_t bits = 0);
Real mul_q(const Real& a, const mpq_class& b, Round rnd, mpfr_prec_t bits = 0);
Real mul_2si(const Real& a, long e);
Real neg(const Real& a);
Real abs(const Real& a);
Real sqr(const Real& a, Round rnd, mpfr_prec_t bits = 0);
Real sqrt(const Real& a, Round rnd, mpfr_prec_t bits = 0);
Real exp(const Real& a, Round rnd, mpfr_prec_t bits = 0);
Real expm1(const Real& a, Round rnd, mpfr_prec_t bits = 0);
Real log(const Real& a, Round rnd, mpfr_prec_t bits = 0);
Real log1p(const Real& a, Round rnd, mpfr_prec_t bits = 0);
Real sin(const Real& a, Round rnd, mpfr_prec_t bits = 0);
Real cos(const Real& a, Round rnd, mpfr_prec_t bits = 0);
Real asin(const Real& a, Round rnd, mpfr_prec_t bits = 0);
Real atan2(const Real& y, const Real& x, Round rnd, mpfr_prec_t bits = 0);
Real hypot(const Real& a, const Real& b, Round rnd, mpfr_prec_t bits = 0);
Real pow_ui(const Real& a, unsigned long n, Round rnd, mpfr_prec_t bits = 0);
const Real& max(const Real& a, const Real& b);
const Real& min(const Real& a, const Real& b);

/// Closed real interval [lo, hi] with outward-rounded operations.
struct Interval {
  Real lo;
  Real hi;

  Interval() = default;
  explicit Interval(const Real& point) : lo(point), hi(point) {}
  Interval(Real lower, Real upper);
  static Interval from_mpq(const mpq_class& q, mpfr_prec_t bits);

  bool is_point() const { return lo == hi; }
  bool contains(const Real& x) const { return lo <= x && x <= hi; }
  Real width() const;
  Real mid() const;
  mpfr_prec_t bits() const { return lo.bits() > hi.bits() ? lo.bits() : hi.bits(); }
};

Interval add(const Interval& a, const Interval& b, mpfr_prec_t bits = 0);
Interval sub(const Interval& a, const Interval& b, mpfr_prec_t bits = 0);
Interval neg(const Interval& a);
Interval mul_z(const Interval& a, const mpz_class& k, mpfr_prec_t bits = 0);
Interval mul_si(const Interval& a, long k, mpfr_prec_t bits = 0);
Interval exp(const Interval& a, mpfr_prec_t bits = 0);
/// Requires lo > 0.
Interval log(const Interval& a, mpfr_prec_t bits = 0);

}  // namespace asymval
