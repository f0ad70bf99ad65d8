#include <asymval/errors.hpp>
#include <asymval/phi0.hpp>
#include <asymval/quadrature.hpp>

#include <cmath>
#include <limits>

#include "doctest.h"
#include "oracles.hpp"

using namespace asymval;

namespace {

const PrecisionContext ctx{};

Ball eval(double x, double y, mpfr_prec_t bits = 128) {
  PrecisionContext c;
  c.bits = bits;
  return phi0_eval(Ball(x, y, bits), c).value;
}

// distance from the ball centre to (x, y), rounded up
double dist(const Ball& b, double x, double y) {
  return std::hypot(b.re().to_double(Round::Nearest) - x, b.im().to_double(Round::Nearest) - y);
}

}  // namespace

TEST_SUITE("phi0") {
  TEST_CASE("special values") {
    Ball z = eval(0, 0);
    CHECK(z.re().is_zero());
    CHECK(z.im().is_zero());
    CHECK(z.rad().is_zero());

    Ball p = eval(10, 0, 256);
    CHECK(add(abs(sub(p.re(), Real(1L, 256), Round::Up)), p.rad(), Round::Up) < 1e-40);
    Ball m = eval(-10, 0, 256);
    CHECK(add(abs(m.re()), m.rad(), Round::Up) < 1e-40);

    Ball q = eval(-1, 0);
    CHECK(add(q.re(), q.rad(), Round::Up) < 0.0);
    CHECK(sub(q.re(), q.rad(), Round::Down) > -0.5);
    auto o = oracle::phi0({-1, 0});
    REQUIRE(o);
    CHECK(dist(q, o->real(), o->imag()) < 1e-15);
  }

  TEST_CASE("regimes by modulus") {
    CHECK(phi0_eval(Ball(0.1, 0.0, 128), ctx).regime == Regime::Taylor);
    CHECK(phi0_eval(Ball(3.0, 1.0, 128), ctx).regime == Regime::Midrange);
    CHECK(phi0_eval(Ball(30.0, 1.0, 128), ctx).regime == Regime::Farfield);
  }

  TEST_CASE("quadrature oracle") {
    auto z0 = erf_integral_oracle(0, 0, 1e-30);
    CHECK(z0.re.is_zero());
    auto z1 = erf_integral_oracle(1, 0, 1e-30);
    CHECK(z1.re.to_double(Round::Nearest) == doctest::Approx(0.7468241328124270).epsilon(1e-15));
    CHECK(z1.im.is_zero());
    auto zi = erf_integral_oracle(0, 1, 1e-30);
    CHECK(std::fabs(zi.re.to_double(Round::Nearest)) < 1e-30);
    CHECK(zi.im.to_double(Round::Nearest) == doctest::Approx(1.4626517459071816).epsilon(1e-15));
    auto zi2 = erf_integral_oracle(0, 1, 1e-12);
    CHECK(std::fabs(zi.im.to_double(Round::Nearest) - zi2.im.to_double(Round::Nearest)) < 1e-12);
  }

  TEST_CASE("engine agrees with the quadrature oracle") {
    std::uniform_real_distribution<double> u(-10, 10);
    int checked = 0;
    while (checked < 60) {
      const double x = u(oracle::rng()), y = u(oracle::rng());
      if (std::hypot(x, y) > 10) continue;
      ++checked;
      Ball v = eval(x, y);
      auto o = oracle::phi0_quadrature(x, y, 128);
      Ball ob(o.re, o.im, o.err);
      CHECK(v.overlaps(ob));
    }
  }

  TEST_CASE("engine agrees with the long double oracle in the cones") {
    std::uniform_real_distribution<double> r(0, 25), t(-M_PI / 5, M_PI / 5);
    for (int i = 0; i < 200; ++i) {
      const double rr = r(oracle::rng()), tt = t(oracle::rng()) + (i % 2 ? M_PI : 0.0);
      const std::complex<double> z = std::polar(rr, tt);
      auto o = oracle::phi0(z);
      REQUIRE(o);
      Ball v = eval(z.real(), z.imag());
      CHECK(dist(v, o->real(), o->imag()) <= v.rad().to_double(Round::Up) + 1e-14);
    }
  }

  TEST_CASE("derivative") {
    Ball d0 = phi0_deriv(Ball(0.0, 0.0, 128), ctx);
    CHECK(d0.rad() < 1e-30);
    CHECK(dist(d0, 0.5641895835477563, 0) < 1e-16);

    Ball zero = phi0_deriv(Ball(-1 / std::sqrt(M_PI), 0.0, 128), ctx);
    CHECK(zero.abs_upper() < 1e-15);

    Ball d = phi0_deriv(Ball(1.0, 1.0, 128), ctx);
    const double h = 1e-6;
    Ball fp = eval(1 + h, 1), fm = eval(1 - h, 1);
    const double fr = (fp.re().to_double(Round::Nearest) - fm.re().to_double(Round::Nearest)) / (2 * h);
    const double fi = (fp.im().to_double(Round::Nearest) - fm.im().to_double(Round::Nearest)) / (2 * h);
    CHECK(dist(d, fr, fi) < 1e-9);
    const std::complex<double> z(1, 1);
    const std::complex<double> exact = std::exp(-z * z) * (z + 1 / std::sqrt(M_PI));
    CHECK(dist(d, exact.real(), exact.imag()) < 1e-15);
  }

  TEST_CASE("real-axis monotonicity") {
    const double c = -1 / std::sqrt(M_PI);
    double prev = 1e9;
    for (double x = -4; x < c - 0.01; x += 0.05) {
      const double v = eval(x, 0).re().to_double(Round::Nearest);
      CHECK(v < prev);
      prev = v;
    }
    prev = -1e9;
    for (double x = c + 0.01; x < 4; x += 0.05) {
      const double v = eval(x, 0).re().to_double(Round::Nearest);
      CHECK(v > prev);
      prev = v;
    }
  }

  TEST_CASE("|phi0(z)| <= 4|z| on the unit disc") {
    std::uniform_real_distribution<double> r(0, 1), t(-M_PI, M_PI);
    for (int i = 0; i < 1000; ++i) {
      const auto z = std::polar(r(oracle::rng()), t(oracle::rng()));
      Ball v = eval(z.real(), z.imag());
      CHECK(v.abs_upper() <= 4 * std::abs(z));
    }
  }

  TEST_CASE("real-axis range") {
    for (double x = 0.05; x <= 20; x += 0.05) {
      // e^{-x^2} must be resolvable
      const auto bits = static_cast<mpfr_prec_t>(128 + 1.5 * x * x);
      Ball v = eval(x, 0, bits);
      CHECK(sub(v.re(), v.rad(), Round::Down) > 0.0);
      CHECK(add(v.re(), v.rad(), Round::Up) < 1.0);
      Ball w = eval(-x, 0, bits);
      CHECK(add(w.re(), w.rad(), Round::Up) < 0.0);
      CHECK(sub(w.re(), w.rad(), Round::Down) > -0.5);
    }
  }

  TEST_CASE("adjacent regimes agree at the cuts") {
    for (double cut : {0.125, 12.0})
      for (double t : {0.0, 0.3, 2.9, M_PI}) {
        const double e = 1e-12;
        auto zi = std::polar(cut - e, t), zo = std::polar(cut + e, t);
        Ball a = eval(zi.real(), zi.imag()), b = eval(zo.real(), zo.imag());
        const double lip = std::exp(cut * cut) * (cut + 1) * 2 * e * 4;
        CHECK(dist(a, b.re().to_double(Round::Nearest), b.im().to_double(Round::Nearest)) <=
              a.rad().to_double(Round::Up) + b.rad().to_double(Round::Up) + lip + 1e-30);
      }
  }

  TEST_CASE("far field") {
    LogPolar big{Interval(Real(100L, 128)), RationalAngle(0, 1)};
    auto f = phi0_far(big, ctx);
    CHECK(f.near_limit == 1);
    // -e^200 + small
    CHECK(f.log_deviation < -std::exp(200.0) * 0.999);

    LogPolar left{Interval(Real(3L, 128)), RationalAngle(1, 1)};
    auto g = phi0_far(left, ctx);
    CHECK(g.near_limit == 0);
    const double r = std::exp(3.0);
    const double formula = std::log(0.5) - r * r + std::log1p(1 / (std::sqrt(M_PI) * r));
    CHECK(g.log_deviation.to_double(Round::Nearest) <= formula + 1e-9);
    Ball direct = eval(-r, 0);
    CHECK(log(direct.abs_upper(), Round::Up) <= g.log_deviation);

    LogPolar up{Interval(Real(3L, 128)), RationalAngle(1, 2)};
    CHECK_THROWS_AS(phi0_far(up, ctx), SectorError);
  }

  TEST_CASE("far bound holds against the oracle") {
    std::uniform_real_distribution<double> r(3, 6), t(0, M_PI / 4 - 1.0 / 64);
    for (int i = 0; i < 200; ++i) {
      const double rr = r(oracle::rng()), beta = t(oracle::rng());
      const double ang = (i % 2 ? M_PI : 0.0) + (i % 4 < 2 ? beta : -beta);
      auto o = oracle::phi0(std::polar(rr, ang));
      REQUIRE(o);
      const double limit = i % 2 ? 0.0 : 1.0;
      const double dev = std::abs(*o - limit);
      Real bound = phi0_far_log_bound(Real(std::log(rr), 128), Real(beta + 1e-15, 128), 128);
      // the oracle is rounded to double near the limit
      CHECK(dev <= std::exp(bound.to_double(Round::Up)) + 4 * std::numeric_limits<double>::epsilon());
    }
  }
}
