#include "asymval/numerics/real.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "asymval/errors.hpp"

namespace asymval {

namespace {

mpfr_prec_t pick(mpfr_prec_t bits, const Real& a) { return bits != 0 ? bits : a.bits(); }

mpfr_prec_t pick(mpfr_prec_t bits, const Real& a, const Real& b) {
  if (bits != 0) return bits;
  return a.bits() > b.bits() ? a.bits() : b.bits();
}

mpfr_prec_t clamp_bits(mpfr_prec_t bits) {
  if (bits < MPFR_PREC_MIN) return MPFR_PREC_MIN;
  if (bits > MPFR_PREC_MAX) return MPFR_PREC_MAX;
  return bits;
}

}  // namespace

Real::Real(mpfr_prec_t bits) {
  mpfr_init2(value_, clamp_bits(bits));
  mpfr_set_zero(value_, 1);
}

Real::Real(double v, mpfr_prec_t bits) {
  mpfr_init2(value_, clamp_bits(bits));
  mpfr_set_d(value_, v, MPFR_RNDN);
}

Real::Real(long v, mpfr_prec_t bits) {
  mpfr_init2(value_, clamp_bits(bits));
  mpfr_set_si(value_, v, MPFR_RNDN);
}

Real::Real(const mpz_class& v, mpfr_prec_t bits, Round rnd) {
  mpfr_init2(value_, clamp_bits(bits));
  mpfr_set_z(value_, v.get_mpz_t(), to_mpfr(rnd));
}

Real::Real(const mpq_class& v, mpfr_prec_t bits, Round rnd) {
  mpfr_init2(value_, clamp_bits(bits));
  mpfr_set_q(value_, v.get_mpq_t(), to_mpfr(rnd));
}

Real Real::parse(std::string_view text, mpfr_prec_t bits, Round rnd) {
  Real r(bits);
  std::string s(text);
  if (s.empty()) throw FormatError("empty real literal");
  char* end = nullptr;
  mpfr_strtofr(r.value_, s.c_str(), &end, 0, to_mpfr(rnd));
  if (end == s.c_str() || *end != '\0') throw FormatError("not a real number: '" + s + "'");
  return r;
}

Real Real::pi(mpfr_prec_t bits, Round rnd) {
  Real r(bits);
  mpfr_const_pi(r.value_, to_mpfr(rnd));
  return r;
}

Real Real::ln2(mpfr_prec_t bits, Round rnd) {
  Real r(bits);
  mpfr_const_log2(r.value_, to_mpfr(rnd));
  return r;
}

Real Real::infinity(mpfr_prec_t bits, int sign) {
  Real r(bits);
  mpfr_set_inf(r.value_, sign);
  return r;
}

Real::Real(const Real& other) {
  mpfr_init2(value_, other.bits());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, other.bits());
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.bits());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

Real Real::rounded(mpfr_prec_t bits, Round rnd) const {
  Real r(bits);
  mpfr_set(r.value_, value_, to_mpfr(rnd));
  return r;
}

double Real::to_double(Round rnd) const { return mpfr_get_d(value_, to_mpfr(rnd)); }

long Real::to_long(Round rnd) const { return mpfr_get_si(value_, to_mpfr(rnd)); }

std::string Real::to_decimal() const {
  if (is_nan()) return "nan";
  if (is_inf()) return sign() > 0 ? "inf" : "-inf";
  if (is_zero()) return "0";
  // 1 + ceil(p log10 2) digits round-trip exactly at precision p.
  const auto digits = static_cast<size_t>(1 + std::ceil(static_cast<double>(bits()) * 0.30102999566398120));
  mpfr_exp_t exp10 = 0;
  std::vector<char> buf(digits + 8);
  mpfr_get_str(buf.data(), &exp10, 10, digits, value_, MPFR_RNDN);
  std::string mant(buf.data());
  std::string sign_str;
  if (!mant.empty() && mant[0] == '-') {
    sign_str = "-";
    mant.erase(0, 1);
  }
  // Strip trailing zeros of the mantissa; value is 0.MANT x 10^exp10.
  while (mant.size() > 1 && mant.back() == '0') mant.pop_back();
  std::string out = sign_str + mant.substr(0, 1);
  if (mant.size() > 1) out += "." + mant.substr(1);
  out += "e" + std::to_string(static_cast<long>(exp10) - 1);
  return out;
}

std::string Real::to_short(int digits) const {
  if (is_nan()) return "nan";
  if (is_inf()) return sign() > 0 ? "inf" : "-inf";
  std::vector<char> buf(static_cast<size_t>(digits) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, value_);
  return std::string(buf.data());
}

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (a.is_nan() || b.is_nan()) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.value_, b.value_);
  return c < 0 ? std::partial_ordering::less
               : c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent;
}

std::partial_ordering operator<=>(const Real& a, double b) {
  if (a.is_nan() || std::isnan(b)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp_d(a.value_, b);
  return c < 0 ? std::partial_ordering::less
               : c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent;
}

Real add(const Real& a, const Real& b, Round rnd, mpfr_prec_t bits) {
  Real r(pick(bits, a, b));
  mpfr_add(r.raw(), a.raw(), b.raw(), to_mpfr(rnd));
  return r;
}

Real sub(const Real& a, const Real& b, Round rnd, mpfr_prec_t bits) {
  Real r(pick(bits, a, b));
  mpfr_sub(r.raw(), a.raw(), b.raw(), to_mpfr(rnd));
  return r;
}

Real mul(const Real& a, const Real& b, Round rnd, mpfr_prec_t bits) {
  Real r(pick(bits, a, b));
  mpfr_mul(r.raw(), a.raw(), b.raw(), to_mpfr(rnd));
  return r;
}

Real div(const Real& a, const Real& b, Round rnd, mpfr_prec_t bits) {
  Real r(pick(bits, a, b));
  mpfr_div(r.raw(), a.raw(), b.raw(), to_mpfr(rnd));
  return r;
}

Real add_d(const Real& a, double b, Round rnd, mpfr_prec_t bits) {
  Real r(pick(bits, a));
  mpfr_add_d(r.raw(), a.raw(), b, to_mpfr(rnd));
  return r;
}

Real mul_d(const Real& a, double b, Round rnd, mpfr_prec_t bits) {
  Real r(pick(bits, a));
  mpfr_mul_d(r.raw(), a.raw(), b, to_mpfr(rnd));
  return r;
}

Real mul_si(const Real& a, long b, Round rnd, mpfr_prec_t bits) {
  Real r(pick(bits, a));
  mpfr_mul_si(r.raw(), a.raw(), b, to_mpfr(rnd));
  return r;
}

Real div_si(const Real& a, long b, Round rnd, mpfr_prec_t bits) {
  Real r(pick(bits, a));
  mpfr_div_si(r.raw(), a.raw(), b, to_mpfr(rnd));
  return r;
}

Real mul_z(const Real& a, const mpz_class& b, Round rnd, mpfr_prec_t bits) {
  Real r(pick(bits, a));
  mpfr_mul_z(r.raw(), a.raw(), b.get_mpz_t(), to_mpfr(rnd));
  return r;
}

Real mul_q(const Real& a, const mpq_class& b, Round rnd, mpfr_prec_t bits) {
  Real r(pick(bits, a));
  mpfr_mul_q(r.raw(), a.raw(), b.get_mpq_t(), to_mpfr(rnd));
  return r;
}

Real mul_2si(const Real& a, long e) {
  Real r(a.bits());
  mpfr_mul_2si(r.raw(), a.raw(), e, MPFR_RNDN);
  return r;
}

Real neg(const Real& a) {
  Real r(a.bits());
  mpfr_neg(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

Real abs(const Real& a) {
  Real r(a.bits());
  mpfr_abs(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

#define ASYMVAL_UNARY(name, fn)                                   \
  Real name(const Real& a, Round rnd, mpfr_prec_t bits) {         \
    Real r(pick(bits, a));                                        \
    fn(r.raw(), a.raw(), to_mpfr(rnd));                           \
    return r;                                                     \
  }

ASYMVAL_UNARY(sqr, mpfr_sqr)
ASYMVAL_UNARY(sqrt, mpfr_sqrt)
ASYMVAL_UNARY(exp, mpfr_exp)
ASYMVAL_UNARY(expm1, mpfr_expm1)
ASYMVAL_UNARY(log, mpfr_log)
ASYMVAL_UNARY(log1p, mpfr_log1p)
ASYMVAL_UNARY(sin, mpfr_sin)
ASYMVAL_UNARY(cos, mpfr_cos)
ASYMVAL_UNARY(asin, mpfr_asin)

#undef ASYMVAL_UNARY

Real atan2(const Real& y, const Real& x, Round rnd, mpfr_prec_t bits) {
  Real r(pick(bits, y, x));
  mpfr_atan2(r.raw(), y.raw(), x.raw(), to_mpfr(rnd));
  return r;
}

Real hypot(const Real& a, const Real& b, Round rnd, mpfr_prec_t bits) {
  Real r(pick(bits, a, b));
  mpfr_hypot(r.raw(), a.raw(), b.raw(), to_mpfr(rnd));
  return r;
}

Real pow_ui(const Real& a, unsigned long n, Round rnd, mpfr_prec_t bits) {
  Real r(pick(bits, a));
  mpfr_pow_ui(r.raw(), a.raw(), n, to_mpfr(rnd));
  return r;
}

const Real& max(const Real& a, const Real& b) { return a < b ? b : a; }
const Real& min(const Real& a, const Real& b) { return b < a ? b : a; }

Interval::Interval(Real lower, Real upper) : lo(std::move(lower)), hi(std::move(upper)) {
  if (hi < lo) throw InvalidArgument("interval with lo > hi");
}

Interval Interval::from_mpq(const mpq_class& q, mpfr_prec_t bits) {
  return Interval(Real(q, bits, Round::Down), Real(q, bits, Round::Up));
}

Real Interval::width() const { return sub(hi, lo, Round::Up); }

Real Interval::mid() const { return mul_2si(add(lo, hi, Round::Nearest, bits() + 1), -1); }

Interval add(const Interval& a, const Interval& b, mpfr_prec_t bits) {
  return Interval(add(a.lo, b.lo, Round::Down, bits), add(a.hi, b.hi, Round::Up, bits));
}

Interval sub(const Interval& a, const Interval& b, mpfr_prec_t bits) {
  return Interval(sub(a.lo, b.hi, Round::Down, bits), sub(a.hi, b.lo, Round::Up, bits));
}

Interval neg(const Interval& a) { return Interval(neg(a.hi), neg(a.lo)); }

Interval mul_z(const Interval& a, const mpz_class& k, mpfr_prec_t bits) {
  if (sgn(k) >= 0) return Interval(mul_z(a.lo, k, Round::Down, bits), mul_z(a.hi, k, Round::Up, bits));
  return Interval(mul_z(a.hi, k, Round::Down, bits), mul_z(a.lo, k, Round::Up, bits));
}

Interval mul_si(const Interval& a, long k, mpfr_prec_t bits) {
  if (k >= 0) return Interval(mul_si(a.lo, k, Round::Down, bits), mul_si(a.hi, k, Round::Up, bits));
  return Interval(mul_si(a.hi, k, Round::Down, bits), mul_si(a.lo, k, Round::Up, bits));
}

Interval exp(const Interval& a, mpfr_prec_t bits) {
  return Interval(exp(a.lo, Round::Down, bits), exp(a.hi, Round::Up, bits));
}

Interval log(const Interval& a, mpfr_prec_t bits) {
  if (a.lo.sign() <= 0) throw DomainError("log of an interval reaching zero");
  return Interval(log(a.lo, Round::Down, bits), log(a.hi, Round::Up, bits));
}

}  // namespace asymval
