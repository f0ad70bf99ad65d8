#include <unistd.h>
#include <asymval/errors.hpp>
#include <asymval/io.hpp>

#include <filesystem>

#include "doctest.h"
#include "oracles.hpp"

using namespace asymval;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  fs::path d = fs::temp_directory_path() / ("asymval_io_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

std::string replace_once(std::string s, const std::string& from, const std::string& to) {
  const auto pos = s.find(from);
  REQUIRE(pos != std::string::npos);
  return s.replace(pos, from.size(), to);
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("sha256") {
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  }

  TEST_CASE("plan round trip is exact") {
    for (const char* g : {"pow:1,1", "pow:2,1", "afflog:4,1"}) {
      const auto& p = oracle::desk_plan(g);
      const std::string s = plan_to_json(p);
      const FunctionPlan q = plan_from_json(s);
      CHECK(plan_to_json(q) == s);
      CHECK(q.N == p.N);
      for (size_t i = 0; i < p.logR.size(); ++i) {
        CHECK(q.logR[i] == p.logR[i]);
        CHECK(q.logR[i].bits() == p.logR[i].bits());
        CHECK(q.logLambda[i] == p.logLambda[i]);
      }
      CHECK(q.growth == p.growth);
      CHECK(q.k_cert.sup_mod_bound == p.k_cert.sup_mod_bound);
      CHECK(q.h_certs[1].split_radius == p.h_certs[1].split_radius);
    }
  }

  TEST_CASE("table growth round trip") {
    const auto s = GrowthSpec::table({{1, 1}, {mpq_class(21, 2), 5}, {100000, 50000}});
    const auto p = build_plan(s, 2, PrecisionContext{});
    CHECK(plan_to_json(plan_from_json(plan_to_json(p))) == plan_to_json(p));
  }

  TEST_CASE("ray round trip is exact") {
    const auto& p = oracle::desk_plan("pow:1,1");
    for (const auto& sel : {select_target({mpq_class(1, 2), 0}), infinity_selection(p),
                            constrained_target({mpq_class(1, 2), 0}, {2}, {1})}) {
      const RayPlan r = make_ray(sel, p);
      const std::string s = ray_to_json(r);
      const RayPlan back = ray_from_json(s);
      CHECK(ray_to_json(back) == s);
      CHECK(back.theta == r.theta);
      CHECK(back.selection.A == r.selection.A);
    }
  }

  TEST_CASE("tampering is rejected") {
    const auto& p = oracle::desk_plan("pow:1,1");
    const std::string s = plan_to_json(p);
    CHECK_THROWS_AS(plan_from_json(replace_once(s, "\"N\": \"13\"", "\"N\": \"14\"")), FormatError);
    CHECK_THROWS_AS(plan_from_json(s.substr(0, s.size() / 2)), FormatError);
    CHECK_THROWS_AS(plan_from_json(replace_once(s, "\"schema_version\": 1", "\"schema_version\": 9")), FormatError);
    const std::string r = ray_to_json(make_ray(select_target({mpq_class(1, 2), 0}), p));
    CHECK_THROWS_AS(ray_from_json(replace_once(r, "\"address\": \"0100\"", "\"address\": \"0101\"")), FormatError);
  }

  TEST_CASE("files are written atomically and deterministically") {
    const auto dir = scratch_dir();
    const auto& p = oracle::desk_plan("pow:1,1");
    const std::string a = (dir / "a.json").string(), b = (dir / "b.json").string();
    save_plan(a, p);
    save_plan(b, build_plan(GrowthSpec::parse("pow:1"), 4, PrecisionContext{}));
    CHECK(read_file(a) == read_file(b));
    CHECK(plan_to_json(load_plan(a)) == read_file(a));
    size_t entries = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++entries;
    CHECK(entries == 2);
    CHECK_THROWS_AS(load_plan((dir / "missing.json").string()), FormatError);
    fs::remove_all(dir);
  }
}
