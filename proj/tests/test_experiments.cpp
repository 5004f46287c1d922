#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "support/oracles.hpp"
#include "tlab/experiments.hpp"

using namespace tlab;

namespace {
const StudyRow* find_row(const StudyTable& t, const std::string& param, const std::string& qty) {
  for (const auto& r : t.rows) {
    if (r.parameter != param) continue;
    for (const auto& kv : r.values)
      if (kv.first == qty) return &r;
  }
  return nullptr;
}

double value_of(const StudyRow& r, const std::string& qty) {
  for (const auto& kv : r.values)
    if (kv.first == qty) return kv.second;
  throw std::runtime_error("missing quantity " + qty);
}
}  // namespace

TEST_CASE("rectangle study: strip bounds hold at coarse settings") {
  const StudyTable t = run_rectangle_study({2.0, 5.0}, 0.1, 2);
  CHECK(t.all_ok);
  const StudyRow* lam = find_row(t, "n=5", "lambda1");
  REQUIRE(lam != nullptr);
  CHECK(lam->status == "ok");
  CHECK(value_of(*lam, "lambda1") ==
        doctest::Approx(oracles::rect_lambda1(5.0)).epsilon(1e-4));
  const StudyRow* mono = find_row(t, "all", "min_F_increment");
  REQUIRE(mono != nullptr);
  CHECK(mono->margin > 0.0);
}

TEST_CASE("cluster study: closed-form ratio, including the n=1 twin") {
  const StudyTable t = run_cluster_study({1, 16}, 0.06, 2);
  CHECK(t.all_ok);
  const StudyRow* f16 = find_row(t, "n=16", "F");
  REQUIRE(f16 != nullptr);
  CHECK(value_of(*f16, "F") == doctest::Approx(0.2).epsilon(1e-2));
  const StudyRow* f1 = find_row(t, "n=1", "F");
  REQUIRE(f1 != nullptr);
  CHECK(value_of(*f1, "F") == doctest::Approx(0.5).epsilon(1e-2));
}

TEST_CASE("homogenized study: maximum principle and the product bound") {
  const StudyTable t = run_homogenized_study(DomainSpec::unit_square(), {100.0}, 0.05);
  CHECK(t.all_ok);
  const StudyRow* mx = find_row(t, "a=100", "max_scaled");
  REQUIRE(mx != nullptr);
  CHECK(value_of(*mx, "max_scaled") <= 1.0 + 1e-6);
  CHECK(value_of(*mx, "max_scaled") ==
        doctest::Approx(100.0 * oracles::slab_screened_max(100.0)).epsilon(2e-2));
}

TEST_CASE("homogenized study rejects screens finer than the mesh floor") {
  CHECK_THROWS_WITH_AS(
      (void)run_homogenized_study(DomainSpec::unit_square(), {1e8}, 0.05, 2e-3),
      doctest::Contains("floor"), std::invalid_argument);
}

TEST_CASE("perforated study: screened stand-in row plus hole counts") {
  const StudyTable t = run_perforated_study({1.0 / 7.0}, 0.05, 0.01, 2);
  CHECK(t.all_ok);
  bool has_limit = false;
  for (const auto& r : t.rows) has_limit = has_limit || r.parameter == "screen-limit";
  CHECK(has_limit);
  const StudyRow* holes = find_row(t, "eps=0.142857", "holes");
  REQUIRE(holes != nullptr);
  CHECK(value_of(*holes, "holes") == 9.0);
}

TEST_CASE("triangle criticality study: quadrature against closed forms") {
  const StudyTable t = run_triangle_criticality();
  CHECK(t.all_ok);
  const StudyRow* i0 = find_row(t, "I0", "value");
  const StudyRow* comb = find_row(t, "tau + sigma/27", "value");
  const StudyRow* gap = find_row(t, "stationarity-gap", "distance_from_-1/8");
  REQUIRE(i0 != nullptr);
  REQUIRE(comb != nullptr);
  REQUIRE(gap != nullptr);
  CHECK(value_of(*i0, "value") == doctest::Approx(0.75).epsilon(1e-10));
  CHECK(value_of(*comb, "value") ==
        doctest::Approx(oracles::moment_combination()).epsilon(1e-9));
  CHECK(std::abs(value_of(*gap, "distance_from_-1/8")) > 1e-3);
}

TEST_CASE("league table: square beats disk, gaps resolved") {
  const StudyTable t =
      run_league_table({DomainSpec::unit_square(), DomainSpec::disk({0, 0}, 1.0, 256)}, 0.025, 3);
  CHECK(t.all_ok);
  REQUIRE(t.rows.size() >= 2);
  // rows come sorted by G, descending: square first
  CHECK(t.rows[0].parameter.find("square") != std::string::npos);
  const double g_sq = value_of(t.rows[0], "G");
  CHECK(g_sq == doctest::Approx(1.4542142201903195).epsilon(1e-4));
}

TEST_CASE("study rows carry well-formed status strings") {
  const StudyTable t = run_triangle_criticality();
  for (const auto& r : t.rows) {
    CAPTURE(r.parameter);
    CHECK((r.status == "ok" || r.status == "violated" || r.status == "info"));
    if (r.status == "ok") CHECK(r.margin >= 0.0);
  }
}
