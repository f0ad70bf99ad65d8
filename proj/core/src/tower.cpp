#include "asymval/numerics/tower.hpp"

#include <cmath>
#include <sstream>

#include "asymval/errors.hpp"

namespace asymval {

namespace {

constexpr mpfr_prec_t kD = 53;

double log_up(double x) { return log(Real(x, kD), Round::Up).to_double(Round::Up); }
double exp_up(double x) { return exp(Real(x, kD), Round::Up).to_double(Round::Up); }
double add_up(double a, double b) { return add(Real(a, kD), Real(b, kD), Round::Up).to_double(Round::Up); }

double lower_cut() {
  // Smallest double that is >= log(1e8).
  return log(Real(TowerMag::kCut, kD), Round::Up).to_double(Round::Up);
}

// m' with exp^j(m') >= exp^j(m) + a, for a >= 0, m >= 0. Uses exp^k(m) >= m.
double raise(int j, double m, double a) {
  while (j > 0) {
    // log(exp^j(m) + a) <= exp^{j-1}(m) + a e^{-exp^{j-1}(m)} <= exp^{j-1}(m) + a e^{-m}
    a = mul(Real(a, kD), exp(Real(-m, kD), Round::Up), Round::Up).to_double(Round::Up);
    if (a == 0.0) a = std::nextafter(0.0, 1.0);
    --j;
  }
  double r = add_up(m, a);
  return r > m ? r : std::nextafter(m, INFINITY);
}

}  // namespace

TowerMag TowerMag::make(int level, double mantissa) {
  if (level < 0 || !(mantissa >= 0.0) || std::isinf(mantissa)) throw InvalidArgument("bad tower magnitude");
  TowerMag t;
  t.level_ = level;
  t.m_ = mantissa;
  const double cut = lower_cut();
  while (t.level_ > 0 && t.m_ < cut) {
    t.m_ = exp_up(t.m_);
    --t.level_;
  }
  while (t.m_ >= kCut) {
    t.m_ = log_up(t.m_);
    ++t.level_;
  }
  return t;
}

TowerMag TowerMag::from_value_upper(const Real& v) {
  if (v.sign() < 0) throw InvalidArgument("negative magnitude");
  if (v < kCut) return make(0, v.to_double(Round::Up));
  return from_log_upper(log(v, Round::Up));
}

TowerMag TowerMag::from_log_upper(const Real& L) {
  if (L < kCut) {
    if (L < std::log(kCut)) return make(0, exp(L, Round::Up, kD).to_double(Round::Up));
    return make(1, L.to_double(Round::Up));
  }
  return from_loglog_upper(log(L, Round::Up));
}

TowerMag TowerMag::from_loglog_upper(const Real& LL) {
  if (LL < kCut) {
    if (LL.sign() < 0) return from_log_upper(exp(LL, Round::Up, kD));
    return make(2, LL.to_double(Round::Up));
  }
  // Three or more levels: peel logs until the mantissa fits.
  Real m = LL;
  int level = 2;
  while (m >= kCut) {
    m = log(m, Round::Up);
    ++level;
  }
  return make(level, m.to_double(Round::Up));
}

std::string TowerMag::str() const {
  std::ostringstream os;
  os.precision(10);
  if (level_ == 0) {
    os << m_;
  } else {
    os << "exp^" << level_ << "(" << m_ << ")";
  }
  return os.str();
}

std::strong_ordering operator<=>(const TowerMag& a, const TowerMag& b) {
  if (a.level_ != b.level_) return a.level_ <=> b.level_;
  if (a.m_ < b.m_) return std::strong_ordering::less;
  if (a.m_ > b.m_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

TowerMag tower_sum_upper(const std::vector<TowerMag>& xs) {
  TowerMag best;
  long count = 0;
  bool all_flat = true;
  for (const auto& x : xs) {
    if (x.is_zero()) continue;
    ++count;
    if (x.level() > 0) all_flat = false;
    if (best < x) best = x;
  }
  if (count == 0) return TowerMag{};
  if (all_flat) {
    Real s(0L, kD);
    for (const auto& x : xs) s = add(s, Real(x.mantissa(), kD), Round::Up);
    return TowerMag::from_value_upper(s);
  }
  if (count == 1) return best;
  // Sum <= count * max.
  const double a = log(Real(count, kD), Round::Up).to_double(Round::Up);
  return TowerMag::make(best.level(), raise(best.level() - 1, best.mantissa(), a));
}

Interval tower_loglog(const TowerMag& x, mpfr_prec_t bits) {
  const Real m(x.mantissa(), bits);
  switch (x.level()) {
    case 0: {
      if (m.is_zero() || log(m, Round::Up) <= 1.0) throw DomainError("log log of a value <= e");
      Interval l(log(m, Round::Down), log(m, Round::Up));
      if (l.lo.sign() <= 0) throw DomainError("log log of a value <= e");
      return log(l);
    }
    case 1:
      if (m <= 1.0) throw DomainError("log log of a value <= e");
      return Interval(log(m, Round::Down), log(m, Round::Up));
    case 2:
      return Interval(m);
    default: {
      Interval v(m);
      for (int k = 2; k < x.level(); ++k) {
        v = exp(v);
        if (v.hi.is_inf()) throw RangeError("tower too tall for log log");
      }
      return v;
    }
  }
}

}  // namespace asymval
