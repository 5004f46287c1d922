#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "support/oracles.hpp"
#include "tlab/functionals.hpp"
#include "tlab/geometry.hpp"
#include "tlab/mesh.hpp"

using namespace tlab;

namespace {
const BoundCheck* find_check(const std::vector<BoundCheck>& checks, const std::string& name) {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}
}  // namespace

TEST_CASE("square report matches the series values") {
  const FunctionalReport r = functional_report(build_domain(DomainSpec::unit_square()), 0.05, 3);
  CHECK(r.T == doctest::Approx(oracles::square_torsion_integral()).epsilon(1e-5));
  CHECK(r.M == doctest::Approx(oracles::square_torsion_max()).epsilon(1e-5));
  CHECK(r.lambda1 == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-5));
  CHECK(r.F == doctest::Approx(0.47704097037880866).epsilon(2e-5));
  CHECK(r.G == doctest::Approx(1.4542142201903195).epsilon(2e-5));
  CHECK(std::abs(r.x0.x - 0.5) < 1e-3);
  CHECK(std::abs(r.x0.y - 0.5) < 1e-3);
  CHECK(r.area == doctest::Approx(1.0));
  CHECK(r.convex);
  REQUIRE(r.levels.size() == 3);
  CHECK(r.levels[1].n_tris == 4 * r.levels[0].n_tris);
  CHECK(r.F_uncertainty > 0.0);
  CHECK(r.G_uncertainty > 0.0);
}

TEST_CASE("extrapolation beats the finest level on the square eigenvalue") {
  const FunctionalReport r = functional_report(build_domain(DomainSpec::unit_square()), 0.08, 3);
  const double exact = 2.0 * kPi * kPi;
  CHECK(std::abs(r.lambda1 - exact) < std::abs(r.levels.back().lambda - exact));
}

TEST_CASE("triangle report hits the closed forms") {
  const FunctionalReport r =
      functional_report(build_domain(DomainSpec::equilateral_triangle()), 0.02, 3);
  CHECK(r.M == doctest::Approx(1.0 / 36.0).epsilon(5e-5));
  CHECK(r.lambda1 == doctest::Approx(16.0 * kPi * kPi / 3.0).epsilon(5e-5));
  CHECK(r.G == doctest::Approx(4.0 * kPi * kPi / 27.0).epsilon(1e-4));
  CHECK(r.F == doctest::Approx(0.45).epsilon(1e-4));  // exactly 9/20 in the limit
  CHECK(std::abs(r.x0.x) < 1e-3);
  CHECK(std::abs(r.x0.y) < 1e-3);
}

TEST_CASE("disk report hits the Bessel values") {
  const FunctionalReport r = functional_report(build_domain(DomainSpec::disk({0, 0}, 1.0, 512)), 0.04, 3);
  CHECK(r.M == doctest::Approx(0.25).epsilon(1e-4));
  CHECK(r.lambda1 == doctest::Approx(oracles::disk_lambda1()).epsilon(1e-4));
  CHECK(r.F == doctest::Approx(0.5).epsilon(2e-4));
  CHECK(r.G == doctest::Approx(oracles::disk_lambda1() / 4.0).epsilon(2e-4));
}

TEST_CASE("rectangle report against the strip series") {
  const FunctionalReport r = functional_report(build_domain(DomainSpec::rectangle(5.0)), 0.08, 2);
  CHECK(r.T == doctest::Approx(oracles::rect_torsion_integral(5.0)).epsilon(2e-4));
  CHECK(r.M == doctest::Approx(oracles::rect_torsion_max(5.0)).epsilon(2e-4));
  CHECK(r.lambda1 == doctest::Approx(oracles::rect_lambda1(5.0)).epsilon(2e-4));
}

TEST_CASE("report rejects fewer than two levels") {
  CHECK_THROWS_AS((void)functional_report(build_domain(DomainSpec::unit_square()), 0.1, 1),
                  std::invalid_argument);
}

TEST_CASE("curvature bounds: disk window, polygon not applicable") {
  const CurvatureBounds disk = curvature_bounds(build_domain(DomainSpec::disk({0, 0}, 1.0, 256)));
  REQUIRE(disk.applicable);
  CHECK(disk.alpha == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(disk.beta == doctest::Approx(1.75).epsilon(1e-12));
  CHECK(disk.F_low == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(disk.F_high == doctest::Approx(7.0 / 11.0).epsilon(1e-12));
  CHECK(disk.F_floor == doctest::Approx(0.25).epsilon(1e-12));

  const CurvatureBounds sq = curvature_bounds(build_domain(DomainSpec::unit_square()));
  CHECK_FALSE(sq.applicable);
  CHECK(!sq.reason.empty());

  const CurvatureBounds ell = curvature_bounds(build_domain(DomainSpec::ellipse(2.0, 1.0, 256)));
  REQUIRE(ell.applicable);
  CHECK(ell.alpha == doctest::Approx(std::pow(0.125, 3) / 4.0).epsilon(1e-12));
}

TEST_CASE("bound audit on the square: every applicable inequality holds") {
  const Domain d = build_domain(DomainSpec::unit_square());
  const FunctionalReport r = functional_report(d, 0.05, 2);
  const auto checks = bound_audit(d, r);
  for (const auto& c : checks) {
    CAPTURE(c.name);
    CHECK(c.status != "violated");
    CHECK(c.status != "conjecture-inconsistent");
  }
  const BoundCheck* up = find_check(checks, "ratio-upper");
  REQUIRE(up != nullptr);
  CHECK(up->margin == doctest::Approx(1.0 - r.F).epsilon(1e-12));
  const BoundCheck* conv = find_check(checks, "convex-ratio-upper");
  REQUIRE(conv != nullptr);
  CHECK(conv->status == "holds");
  const BoundCheck* open = find_check(checks, "ratio-lower-open");
  REQUIRE(open != nullptr);
  CHECK(open->status == "conjecture-consistent");
  // curvature rows exist but do not apply to a polygon
  const BoundCheck* cw = find_check(checks, "curvature-floor");
  REQUIRE(cw != nullptr);
  CHECK(cw->status == "not-applicable");
}

TEST_CASE("bound audit on the disk: curvature window applies and holds") {
  const Domain d = build_domain(DomainSpec::disk({0, 0}, 1.0, 256));
  const FunctionalReport r = functional_report(d, 0.05, 2);
  const auto checks = bound_audit(d, r);
  for (const char* name : {"curvature-window-low", "curvature-window-high", "curvature-floor"}) {
    const BoundCheck* c = find_check(checks, name);
    CAPTURE(name);
    REQUIRE(c != nullptr);
    CHECK(c->status == "holds");
  }
}

TEST_CASE("P-function check: convex ratio near one, non-convex not applicable") {
  const Domain d = build_domain(DomainSpec::unit_square());
  Mesh m = triangulate(d, {1.0 / 64.0, 20});
  const ScalarField u = solve_torsion(m);
  const double M = max_vertex_value(u);
  const PFunctionCheck pc = p_function_check(m, u, M, true);
  REQUIRE(pc.applicable);
  CHECK(pc.ratio <= 1.02);
  CHECK(pc.ratio >= 0.9);

  const PFunctionCheck off = p_function_check(m, u, M, false);
  CHECK_FALSE(off.applicable);
}
