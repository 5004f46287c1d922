#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "support/generators.hpp"
#include "tlab/fem.hpp"
#include "tlab/functionals.hpp"
#include "tlab/geometry.hpp"
#include "tlab/mesh.hpp"
#include "tlab/optimizer.hpp"

using namespace tlab;

TEST_CASE("F and G are exactly scale invariant") {
  // power-of-two scaling keeps every floating-point operation exact, so the
  // two pipelines must agree to roundoff
  for (double s : {2.0, 0.5}) {
    CAPTURE(s);
    const Domain base = build_domain(DomainSpec::unit_square());
    std::vector<Vec2> scaled_pts;
    for (const Vec2& p : base.loops[0].pts) scaled_pts.push_back(s * p);
    const Domain scaled = build_domain(DomainSpec::polygon(scaled_pts, "scaled"));
    const FunctionalReport a = functional_report(base, 0.08, 2);
    const FunctionalReport b = functional_report(scaled, s * 0.08, 2);
    CHECK(std::abs(b.F / a.F - 1.0) < 1e-12);
    CHECK(std::abs(b.G / a.G - 1.0) < 1e-12);
  }
}

TEST_CASE("flux identity on seeded convex polygons") {
  for (unsigned seed = 100; seed < 110; ++seed) {
    CAPTURE(seed);
    const Domain d = build_domain(DomainSpec::polygon(generators::convex_polygon(seed)));
    const Mesh m = triangulate(d, {0.06, 20});
    const ScalarField u = solve_torsion(m);
    const BoundaryField f = boundary_flux(m, u, FluxSource::torsion());
    double total = 0.0;
    for (size_t e = 0; e < m.bedges.size(); ++e)
      total += f.edge_value[e] * dist(m.nodes[m.bedges[e][0]], m.nodes[m.bedges[e][1]]);
    CHECK(std::abs(total + m.area()) <= 1e-10 * m.area());
  }
}

TEST_CASE("P-function stays below its convex ceiling on sample domains") {
  for (const char* which : {"square", "disk"}) {
    CAPTURE(which);
    const Domain d = std::string(which) == "square"
                         ? build_domain(DomainSpec::unit_square())
                         : build_domain(DomainSpec::disk({0, 0}, 1.0, 256));
    const Mesh m = triangulate(d, {1.0 / 64.0, 20});
    const ScalarField u = solve_torsion(m);
    const PFunctionCheck pc = p_function_check(m, u, max_vertex_value(u), true);
    REQUIRE(pc.applicable);
    CHECK(pc.ratio <= 1.02);
  }
}

TEST_CASE("bound audit holds on a dozen seeded convex polygons") {
  for (unsigned seed = 1; seed <= 12; ++seed) {
    CAPTURE(seed);
    const Domain d = build_domain(DomainSpec::polygon(generators::convex_polygon(seed)));
    const FunctionalReport r = functional_report(d, 0.06, 2);
    for (const auto& c : bound_audit(d, r)) {
      CAPTURE(c.name);
      CHECK(c.status != "violated");
      CHECK(c.status != "conjecture-inconsistent");
    }
  }
}

TEST_CASE("polygon objective agrees with the functional report") {
  // the optimizer's internal objective is the same G the report produces
  const std::vector<Vec2> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  OptimizerParams op;
  op.h = 0.05;
  op.max_iters = 0;  // evaluate the seed only
  const OptimTrace tr = maximize_G(square, op);
  REQUIRE(!tr.iterates.empty());
  CHECK(tr.iterates[0].G == doctest::Approx(1.4542142201903195).epsilon(5e-3));
  CHECK(tr.best_G == doctest::Approx(1.4542142201903195).epsilon(5e-4));
}

TEST_CASE("optimizer iterates stay convex with unit area and G never drops") {
  OptimizerParams op;
  op.h = 0.06;
  op.max_iters = 6;
  const OptimTrace tr = maximize_G({{-1.0, 0}, {1.0, 0}, {1.0, 1}, {-1.0, 1}}, op);
  REQUIRE(tr.iterates.size() >= 2);
  for (const auto& step : tr.iterates) {
    CHECK(polygon_is_convex(step.vertices));
    CHECK(polygon_signed_area(step.vertices) == doctest::Approx(1.0).epsilon(1e-9));
  }
  for (size_t i = 1; i < tr.iterates.size(); ++i)
    CHECK(tr.iterates[i].G > tr.iterates[i - 1].G);
}

TEST_CASE("optimizer stops in place on the conjectured maximizer") {
  const double s = std::sqrt(4.0 / std::sqrt(3.0));  // unit-area equilateral triangle
  const std::vector<Vec2> tri{
      {-0.5 * s, 0}, {0.5 * s, 0}, {0, s * std::sqrt(3.0) / 2.0}};
  OptimizerParams op;
  op.h = 0.05;
  const OptimTrace tr = maximize_G(tri, op);
  CHECK(tr.status == "converged");
  CHECK(tr.best_G >= 4.0 * kPi * kPi / 27.0 - 1e-3);
}
