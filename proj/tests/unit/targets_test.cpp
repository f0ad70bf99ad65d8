#include <asymval/errors.hpp>
#include <asymval/targets.hpp>

#include <cmath>
#include <set>

#include "doctest.h"
#include "oracles.hpp"

using namespace asymval;

namespace {

GaussianRational sum_of(const std::vector<long>& A) {
  GaussianRational s{0, 0};
  for (long n : A) s = s + oracle::beta(n);
  return s;
}

GaussianRational random_gaussian() { return {oracle::random_rational(10, 60), oracle::random_rational(10, 60)}; }

}  // namespace

TEST_SUITE("targets") {
  TEST_CASE("enumeration") {
    CHECK(beta(1) == GaussianRational{0, 0});
    CHECK(beta(2) == GaussianRational{mpq_class(1, 2), 0});
    CHECK(beta(3) == GaussianRational{mpq_class(-1, 2), 0});
    CHECK(beta(4) == GaussianRational{0, mpq_class(1, 2)});
    CHECK(beta(5) == GaussianRational{0, mpq_class(-1, 2)});
    CHECK(beta(6) == GaussianRational{mpq_class(1, 3), 0});
    CHECK(index_of({mpq_class(3, 4), 0}) == 18);
    CHECK(block_value(3) == mpq_class(1, 4));
    CHECK_THROWS_AS(index_of({1, 0}), InvalidArgument);
    CHECK_THROWS_AS(index_of({mpq_class(1, 2), mpq_class(1, 2)}), InvalidArgument);
  }

  TEST_CASE("enumeration matches brute force, is injective and bounded") {
    std::set<std::pair<mpq_class, mpq_class>> seen;
    for (long n = 1; n <= 100000; ++n) {
      const auto b = beta(n);
      if (n <= 20000) CHECK(b == oracle::beta(n));
      CHECK(abs(b.re) < 1);
      CHECK(abs(b.im) < 1);
      CHECK(seen.insert({b.re, b.im}).second);
    }
  }

  TEST_CASE("index_of inverts beta") {
    for (int i = 0; i < 100; ++i) {
      mpq_class q = oracle::random_rational(1, 300);
      if (q == 0 || abs(q) >= 1) continue;
      GaussianRational x = i % 2 ? GaussianRational{q, 0} : GaussianRational{0, q};
      CHECK(beta(index_of(x)) == x);
    }
  }

  TEST_CASE("select_target examples") {
    CHECK(select_target({0, 0}).A.empty());
    auto half = select_target({mpq_class(1, 2), 0});
    CHECK(half.A == std::vector<long>{2});
    CHECK(half.achieved == GaussianRational{mpq_class(1, 2), 0});
    auto mixed = select_target(GaussianRational::parse("-1/2+i/2"));
    CHECK(mixed.A == std::vector<long>{3, 4});
    auto big = select_target({mpq_class(17, 5), 0});
    CHECK(big.A.size() == 4);
    CHECK(sum_of(big.A) == GaussianRational{mpq_class(17, 5), 0});
    for (long n : big.A) CHECK(beta(n).re > 0);
  }

  TEST_CASE("random targets are hit exactly") {
    for (int i = 0; i < 100; ++i) {
      const auto w = random_gaussian();
      auto s = select_target(w);
      CHECK(s.achieved == w);
      CHECK(sum_of(s.A) == w);
      CHECK(s.abs_sum <= abs(w.re) + abs(w.im) + 2);
      CHECK(std::is_sorted(s.A.begin(), s.A.end()));
    }
  }

  TEST_CASE("parsing") {
    CHECK(GaussianRational::parse("0.25-i1/3") == GaussianRational{mpq_class(1, 4), mpq_class(-1, 3)});
    CHECK(GaussianRational::parse("-i/3") == GaussianRational{0, mpq_class(-1, 3)});
    CHECK(GaussianRational::parse("2") == GaussianRational{2, 0});
    CHECK_THROWS(GaussianRational::parse("abc"));
  }

  TEST_CASE("approximate targets") {
    auto exact = select_target_approx({0.5, 0}, 1e-3);
    CHECK(exact.A == std::vector<long>{2});
    const double s2 = std::sqrt(2.0) / 2;
    auto a = select_target_approx({s2, 0}, 1e-6);
    CHECK(a.A.size() <= 40);
    CHECK(abs(a.achieved.re - mpq_class(s2)) <= mpq_class(1e-6));
    CHECK(a.achieved == sum_of(a.A));
    CHECK_THROWS_AS(select_target_approx({s2, 0}, 0.0), InvalidArgument);
  }

  TEST_CASE("infinity target") {
    auto s = infinity_target(10);
    REQUIRE(s.A.size() == 10);
    CHECK(s.A[0] == 2);
    mpq_class total = 0;
    for (long n : s.A) {
      const auto b = beta(n);
      CHECK(b.im == 0);
      CHECK(b.re >= mpq_class(1, 2));
      total += b.re;
    }
    CHECK(total >= 5);
    CHECK(infinity_target(40).achieved.re > infinity_target(20).achieved.re);
  }

  TEST_CASE("constrained targets") {
    auto plain = constrained_target({mpq_class(3, 7), mpq_class(-2, 5)}, {}, {});
    CHECK(plain.A == select_target({mpq_class(3, 7), mpq_class(-2, 5)}).A);

    auto a = constrained_target({mpq_class(1, 2), 0}, {2}, {});
    CHECK(a.A == std::vector<long>{2});

    auto b = constrained_target({mpq_class(1, 4), 0}, {2, 6}, {});
    CHECK(b.achieved == GaussianRational{mpq_class(1, 4), 0});
    CHECK(b.A[0] == 2);
    CHECK(b.A[1] == 6);
    for (size_t i = 2; i < b.A.size(); ++i) {
      CHECK(b.A[i] > 6);
      CHECK(beta(b.A[i]).re < 0);
    }

    for (int i = 0; i < 100; ++i) {
      const auto w = random_gaussian();
      const unsigned code = static_cast<unsigned>(i % 4);
      std::set<long> in, out;
      ((code & 2) ? in : out).insert(1);
      ((code & 1) ? in : out).insert(2);
      auto s = constrained_target(w, in, out);
      CHECK(s.achieved == w);
      CHECK(sum_of(s.A) == w);
      auto prefix = s.bits_prefix(2);
      CHECK(prefix[0] == ((code & 2) ? 1 : 0));
      CHECK(prefix[1] == ((code & 1) ? 1 : 0));
    }

    const GaussianRational w{mpq_class(7, 3), mpq_class(1, 9)};
    auto s1 = constrained_target(w, {2}, {});
    auto s2 = constrained_target(w, {6}, {});
    CHECK(s1.A != s2.A);
    CHECK(s1.achieved == s2.achieved);
    CHECK_THROWS_AS(constrained_target(w, {2}, {2}), InvalidArgument);
  }
}
