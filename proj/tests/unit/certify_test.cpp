#include <asymval/certify.hpp>
#include <asymval/errors.hpp>

#include <cmath>

#include "doctest.h"
#include "oracles.hpp"

using namespace asymval;

namespace {

PrecisionContext ctx64() {
  PrecisionContext c;
  c.bits = 64;
  return c;
}

// Largest |phi0| and |Arg phi0| sampled on the sector up to radius rmax.
std::pair<double, double> sample_sup(double centre, double half, double step, double rmax, int angles) {
  double mod = 0, arg = 0;
  for (int k = 0; k <= angles; ++k) {
    const double t = centre - half + 2 * half * k / angles;
    for (double r = step; r <= rmax; r += step) {
      auto v = oracle::phi0(std::polar(r, t));
      REQUIRE(v);
      mod = std::max(mod, std::abs(*v));
      arg = std::max(arg, std::fabs(std::arg(*v)));
    }
  }
  return {mod, arg};
}

}  // namespace

TEST_SUITE("certify") {
  TEST_CASE("certify_K") {
    auto c = certify_K(RationalAngle(1, 64), ctx64());
    CHECK(c.certified());
    CHECK(c.sup_mod_bound < 0.75);
    CHECK(c.kind == CertKind::KBound);
    CHECK_THROWS_AS(certify_K(RationalAngle(1, 4), ctx64()), InvalidArgument);
    CHECK_THROWS_AS(certify_K(RationalAngle(0, 1), ctx64()), InvalidArgument);

    auto [mod, arg] = sample_sup(M_PI, M_PI / 64, c.grid_step / 10, 2 * c.split_radius, 8);
    (void)arg;
    CHECK(mod <= c.sup_mod_bound.to_double(Round::Up));
  }

  TEST_CASE("certify_H") {
    auto c = certify_H(1, RationalAngle(1, 32), ctx64());
    CHECK(c.certified());
    CHECK(c.sup_mod_bound <= 2.0);
    REQUIRE(c.sup_arg_bound);
    CHECK(*c.sup_arg_bound < M_PI / 4);
    auto [mod, arg] = sample_sup(0, M_PI / 32, c.grid_step / 10, 2 * c.split_radius, 8);
    CHECK(mod <= c.sup_mod_bound.to_double(Round::Up));
    CHECK(arg <= c.sup_arg_bound->to_double(Round::Up));

    CHECK_THROWS_AS(certify_H(1, RationalAngle(1, 2), ctx64()), InvalidArgument);
    bool failed_or_rejected = false;
    try {
      failed_or_rejected = !certify_H(3, RationalAngle(1, 24), ctx64()).certified();
    } catch (const InvalidArgument&) {
      failed_or_rejected = true;
    }
    CHECK(failed_or_rejected);
  }

  TEST_CASE("find_alphas") {
    auto one = find_alphas(1, ctx64());
    REQUIRE(one.alphas.size() == 1);
    CHECK(one.alphas[0].q() < 2 * one.k_half.q());
    CHECK(one.h_certs[0].certified());
    CHECK(one.h_certs[0].half_angle.q() * 2 == one.alphas[0].q());

    auto four = find_alphas(4, ctx64());
    REQUIRE(four.alphas.size() == 4);
    CHECK(four.k_cert.certified());
    for (int n = 1; n <= 4; ++n) {
      const auto& a = four.alphas[static_cast<size_t>(n - 1)].q();
      CHECK(a < mpq_class(1, 4 * n));
      CHECK(four.h_certs[static_cast<size_t>(n - 1)].certified());
      if (n > 1) CHECK(a < four.alphas[static_cast<size_t>(n - 2)].q());
    }
    CHECK(four.alphas[0].q() < 2 * four.k_half.q());
  }

  TEST_CASE("failure is monotone in the half-angle") {
    const auto fa = find_alphas(5, ctx64());
    const unsigned long den = 1UL << fa.granularity_log2;
    for (int n = 1; n <= 5; ++n) {
      mpq_class h = fa.h_certs[static_cast<size_t>(n - 1)].half_angle.q();
      long j = mpq_class(h * den).get_num().get_si();
      long first_fail = -1;
      for (long k = j + 1; k < j + 4000 && first_fail < 0; ++k) {
        try {
          if (!certify_H(n, RationalAngle(k, den), ctx64()).certified()) first_fail = k;
        } catch (const InvalidArgument&) {
          first_fail = k;
        }
      }
      REQUIRE(first_fail > 0);
      for (long k = first_fail + 1; k <= first_fail + 3; ++k) {
        bool bad = false;
        try {
          bad = !certify_H(n, RationalAngle(k, den), ctx64()).certified();
        } catch (const InvalidArgument&) {
          bad = true;
        }
        CHECK(bad);
      }
    }
  }

  TEST_CASE("certificates are reproducible") {
    auto a = certify_H(2, RationalAngle(31, 1024), ctx64());
    auto b = certify_H(2, RationalAngle(31, 1024), ctx64());
    CHECK(a.sup_mod_bound == b.sup_mod_bound);
    CHECK(*a.sup_arg_bound == *b.sup_arg_bound);
    CHECK(a.segments == b.segments);
    CHECK(a.split_radius == b.split_radius);
  }
}
