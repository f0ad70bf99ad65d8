#include "asymval/numerics/rational_angle.hpp"

#include <cctype>

#include "asymval/errors.hpp"

namespace asymval {

RationalAngle::RationalAngle(long num, unsigned long den) {
  if (den == 0) throw InvalidArgument("zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  q_ = reduce(q);
}

mpq_class RationalAngle::reduce_positive(mpq_class q) {
  q.canonicalize();
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  // floor(q/2)*2 via floor of q then parity fix.
  mpz_class two_fl;
  mpz_fdiv_q_2exp(two_fl.get_mpz_t(), fl.get_mpz_t(), 1);
  two_fl *= 2;
  q -= mpq_class(two_fl);
  return q;
}

mpq_class RationalAngle::reduce(mpq_class q) {
  q = reduce_positive(std::move(q));
  if (q > 1) q -= 2;
  return q;
}

RationalAngle RationalAngle::parse(const std::string& text) { return RationalAngle(parse_rational(text)); }

Interval RationalAngle::radians(mpfr_prec_t bits) const {
  Real pi_lo = Real::pi(bits, Round::Down);
  Real pi_hi = Real::pi(bits, Round::Up);
  if (q_ >= 0) return Interval(mul_q(pi_lo, q_, Round::Down), mul_q(pi_hi, q_, Round::Up));
  return Interval(mul_q(pi_hi, q_, Round::Down), mul_q(pi_lo, q_, Round::Up));
}

double RationalAngle::to_double() const {
  return mul_q(Real::pi(80, Round::Nearest), q_, Round::Nearest).to_double(Round::Nearest);
}

std::string rational_str(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

mpq_class parse_rational(const std::string& raw) {
  std::string text;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) text += c;
  if (text.empty()) throw FormatError("empty rational");
  auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      mpz_class num(text.substr(0, slash), 10);
      mpz_class den(text.substr(slash + 1), 10);
      if (den == 0) throw FormatError("zero denominator in '" + raw + "'");
      mpq_class q(num, den);
      q.canonicalize();
      return q;
    }
    auto dot = text.find('.');
    auto epos = text.find_first_of("eE");
    std::string mant = text.substr(0, epos);
    long e10 = 0;
    if (epos != std::string::npos) e10 = std::stol(text.substr(epos + 1));
    if (dot != std::string::npos && dot < mant.size()) {
      e10 -= static_cast<long>(mant.size() - dot - 1);
      mant.erase(dot, 1);
    }
    if (mant.empty() || mant == "-" || mant == "+") throw FormatError("bad rational '" + raw + "'");
    if (mant[0] == '+') mant.erase(0, 1);
    mpz_class num(mant, 10);
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(e10 < 0 ? -e10 : e10));
    mpq_class q = e10 >= 0 ? mpq_class(num * p10) : mpq_class(num, p10);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw FormatError("bad rational '" + raw + "'");
  } catch (const std::out_of_range&) {
    throw FormatError("bad rational '" + raw + "'");
  }
}

}  // namespace asymval
