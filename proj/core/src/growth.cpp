#include "asymval/growth.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "asymval/errors.hpp"
#include "asymval/numerics/rational_angle.hpp"

namespace asymval {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

mpq_class param(const std::string& s) {
  try {
    return parse_rational(trim(s));
  } catch (const FormatError& e) {
    throw InvalidArgument(std::string("growth parameter: ") + e.what());
  }
}

Real q_real(const mpq_class& q, mpfr_prec_t bits, Round rnd) { return Real(q, bits, rnd); }

}  // namespace

GrowthSpec GrowthSpec::power(const mpq_class& k, const mpq_class& c) {
  GrowthSpec g;
  g.kind = Kind::Power;
  g.params = {k, c};
  g.validate();
  return g;
}

GrowthSpec GrowthSpec::affine_log(const mpq_class& c1, const mpq_class& c0) {
  GrowthSpec g;
  g.kind = Kind::AffineLog;
  g.params = {c1, c0};
  g.validate();
  return g;
}

GrowthSpec GrowthSpec::table(std::vector<std::pair<mpq_class, mpq_class>> pts) {
  GrowthSpec g;
  g.kind = Kind::Table;
  g.points = std::move(pts);
  g.validate();
  return g;
}

GrowthSpec GrowthSpec::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw InvalidArgument("growth spec needs KIND:ARGS, got '" + text + "'");
  const std::string kind = trim(text.substr(0, colon));
  const std::string rest = text.substr(colon + 1);
  if (kind == "pow") {
    auto parts = split(rest, ',');
    if (parts.empty() || parts.size() > 2) throw InvalidArgument("pow takes k[,c]");
    return power(param(parts[0]), parts.size() == 2 ? param(parts[1]) : mpq_class(1));
  }
  if (kind == "afflog") {
    auto parts = split(rest, ',');
    if (parts.size() != 2) throw InvalidArgument("afflog takes c1,c0");
    return affine_log(param(parts[0]), param(parts[1]));
  }
  if (kind == "table") {
    std::ifstream in(trim(rest));
    if (!in) throw InvalidArgument("cannot read growth table '" + trim(rest) + "'");
    std::vector<std::pair<mpq_class, mpq_class>> pts;
    std::string line;
    while (std::getline(in, line)) {
      if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
      for (char& ch : line)
        if (ch == ',' || ch == '\t') ch = ' ';
      std::istringstream ls(line);
      std::string a, b, extra;
      if (!(ls >> a)) continue;
      if (!(ls >> b) || (ls >> extra)) throw InvalidArgument("growth table rows are 'r G'");
      pts.emplace_back(param(a), param(b));
    }
    return table(std::move(pts));
  }
  throw InvalidArgument("unknown growth kind '" + kind + "'");
}

void GrowthSpec::validate() const {
  switch (kind) {
    case Kind::Power:
      if (params.size() != 2) throw InvalidArgument("pow needs two parameters");
      if (params[0] <= 0) throw InvalidArgument("pow exponent must be positive");
      if (params[1] <= 0) throw InvalidArgument("pow coefficient must be positive");
      return;
    case Kind::AffineLog:
      if (params.size() != 2) throw InvalidArgument("afflog needs two parameters");
      if (params[0] <= 0 || params[1] <= 0) throw InvalidArgument("afflog coefficients must be positive");
      return;
    case Kind::Table: {
      if (points.size() < 2) throw InvalidArgument("growth table needs at least two points");
      for (size_t i = 0; i < points.size(); ++i) {
        if (points[i].first < 0) throw InvalidArgument("growth table radii must be >= 0");
        if (i > 0 && (points[i].first <= points[i - 1].first || points[i].second <= points[i - 1].second))
          throw InvalidArgument("growth table must be strictly increasing in both columns");
      }
      const auto& [x0, y0] = points[0];
      const auto& [x1, y1] = points[1];
      mpq_class g0 = y0 - (y1 - y0) / (x1 - x0) * x0;
      if (g0 <= 0) throw InvalidArgument("growth table must give G(0) > 0");
      return;
    }
  }
}

std::string GrowthSpec::str() const {
  switch (kind) {
    case Kind::Power:
      return "pow:" + rational_str(params[0]) + "," + rational_str(params[1]);
    case Kind::AffineLog:
      return "afflog:" + rational_str(params[0]) + "," + rational_str(params[1]);
    case Kind::Table: {
      std::string s = "table:";
      for (size_t i = 0; i < points.size(); ++i) {
        if (i) s += ";";
        s += rational_str(points[i].first) + " " + rational_str(points[i].second);
      }
      return s;
    }
  }
  return "";
}

Real GrowthSpec::eval(const Real& r, Round rnd, mpfr_prec_t bits) const {
  if (r.sign() < 0) throw InvalidArgument("growth evaluated at negative radius");
  switch (kind) {
    case Kind::Power: {
      Real l = log1p(r, rnd, bits);
      Real e = exp(mul_q(l, params[0], rnd, bits), rnd, bits);
      return mul_q(e, params[1], rnd, bits);
    }
    case Kind::AffineLog: {
      Real l = mul_q(log1p(r, rnd, bits), params[0], rnd, bits);
      return add(l, q_real(params[1], bits, rnd), rnd, bits);
    }
    case Kind::Table: {
      size_t i = 0;
      while (i + 2 < points.size() && mpfr_cmp_q(r.raw(), points[i + 1].first.get_mpq_t()) > 0) ++i;
      if (mpfr_cmp_q(r.raw(), points.back().first.get_mpq_t()) > 0)
        throw GrowthTooSlow("growth table exhausted at r = " + r.to_short());
      const auto& [xa, ya] = points[i];
      const auto& [xb, yb] = points[i + 1];
      const mpq_class slope = (yb - ya) / (xb - xa);
      Real d(bits);
      mpfr_sub_q(d.raw(), r.raw(), xa.get_mpq_t(), to_mpfr(rnd));
      Real v = mul_q(d, slope, rnd, bits);
      Real out(bits);
      mpfr_add_q(out.raw(), v.raw(), ya.get_mpq_t(), to_mpfr(rnd));
      return out;
    }
  }
  return Real(bits);
}

Real GrowthSpec::eval_log(const Real& t, Round rnd, mpfr_prec_t bits) const {
  if (kind == Kind::Table || t < 40.0) return eval(exp(t, rnd, bits), rnd, bits);
  // log(1 + e^t) lies in [t, t + e^{-t}].
  Real l = rnd == Round::Down ? t.rounded(bits, Round::Down)
                              : add(t, exp(neg(t), Round::Up, bits), Round::Up, bits);
  if (kind == Kind::Power) {
    Real e = exp(mul_q(l, params[0], rnd, bits), rnd, bits);
    return mul_q(e, params[1], rnd, bits);
  }
  return add(mul_q(l, params[0], rnd, bits), q_real(params[1], bits, rnd), rnd, bits);
}

Real InverseGrowth::log_r(Round rnd, mpfr_prec_t bits) const {
  if (is_log) return value.rounded(bits, rnd);
  return log(value, rnd, bits);
}

InverseGrowth inverse_growth(const GrowthSpec& g, const Real& y, mpfr_prec_t bits) {
  const mpfr_prec_t wp = bits + 16;
  if (g.eval(Real(0L, wp), Round::Down, wp) >= y)
    throw InvalidArgument("inverse_growth needs y > G(0)");
  const Real ceiling = mul(y, add_d(Real(1L, wp), std::ldexp(1.0, -20), Round::Down), Round::Down, wp);

  // Bracket in r on [0, 1] or in t = log r on [0, hi].
  const bool small = g.eval(Real(1L, wp), Round::Down, wp) >= y;
  auto at = [&](const Real& u, Round rnd) { return small ? g.eval(u, rnd, wp) : g.eval_log(u, rnd, wp); };
  Real lo(0L, wp), hi(1L, wp);
  if (!small) {
    if (g.kind == GrowthSpec::Kind::Table) {
      Real xmax(g.points.back().first, wp, Round::Down);
      if (g.eval(xmax, Round::Down, wp) < y) throw GrowthTooSlow("growth table never reaches " + y.to_short());
      hi = log(xmax, Round::Down, wp);
      if (hi.sign() <= 0) hi = Real(0L, wp);
    } else {
      while (at(hi, Round::Down) < y) {
        lo = hi;
        hi = mul_si(hi, 2, Round::Up);
        if (hi > 1e15) throw GrowthTooSlow("inverse_growth could not bracket " + y.to_short());
      }
    }
  }
  for (int it = 0; it < 8 * wp; ++it) {
    if (at(hi, Round::Up) <= ceiling) return {hi, !small};
    Real mid = mul_2si(add(lo, hi, Round::Up), -1);
    if (at(mid, Round::Down) >= y)
      hi = mid;
    else
      lo = mid;
  }
  throw PrecisionExhausted("inverse_growth bisection did not settle");
}

}  // namespace asymval
