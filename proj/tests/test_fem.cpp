#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <string>

#include "doctest.h"
#include "support/oracles.hpp"
#include "tlab/fem.hpp"
#include "tlab/geometry.hpp"
#include "tlab/mesh.hpp"

using namespace tlab;

namespace {

Mesh disk_mesh(double h, int refs = 0) {
  Mesh m = triangulate(build_domain(DomainSpec::disk({0, 0}, 1.0, 256)), {h, 20});
  for (int i = 0; i < refs; ++i) m = refine(m);
  return m;
}

double flux_total(const Mesh& mesh, const BoundaryField& f) {
  double s = 0.0;
  for (size_t e = 0; e < mesh.bedges.size(); ++e)
    s += f.edge_value[e] * dist(mesh.nodes[mesh.bedges[e][0]], mesh.nodes[mesh.bedges[e][1]]);
  return s;
}

}  // namespace

TEST_CASE("disk torsion: center value and radial profile") {
  const Mesh m = disk_mesh(0.05);
  const ScalarField u = solve_torsion(m);
  CHECK(eval_field(m, u, {0, 0}) == doctest::Approx(0.25).epsilon(5e-3));
  CHECK(eval_field(m, u, {0.5, 0}) == doctest::Approx(oracles::disk_torsion(0.5)).epsilon(5e-3));
  CHECK(max_vertex_value(u) <= 0.25 * (1.0 + 1e-3));
}

TEST_CASE("torsion flux identity: total flux equals minus the area") {
  for (const char* which : {"square", "triangle", "disk"}) {
    Mesh m;
    if (std::string(which) == "square")
      m = triangulate(build_domain(DomainSpec::unit_square()), {0.05, 20});
    else if (std::string(which) == "triangle")
      m = triangulate(build_domain(DomainSpec::equilateral_triangle()), {0.05, 20});
    else
      m = disk_mesh(0.05);
    CAPTURE(which);
    const ScalarField u = solve_torsion(m);
    const BoundaryField f = boundary_flux(m, u, FluxSource::torsion());
    CHECK(std::abs(flux_total(m, f) + m.area()) < 1e-10 * m.area());
  }
}

TEST_CASE("screened solve: a = 0 reduces to torsion, max principle for a > 0") {
  const Mesh m = triangulate(build_domain(DomainSpec::unit_square()), {0.04, 20});
  const ScalarField u0 = solve_torsion(m);
  const ScalarField us = solve_screened(m, 0.0);
  REQUIRE(u0.values.size() == us.values.size());
  for (size_t i = 0; i < u0.values.size(); ++i) CHECK(u0.values[i] == us.values[i]);

  const double a = 400.0;
  const Mesh fine = triangulate(build_domain(DomainSpec::unit_square()), {1.0 / (4.0 * 20.0), 20});
  const ScalarField ua = solve_screened(fine, a);
  CHECK(a * max_vertex_value(ua) <= 1.0 + 1e-6);
  // slab limit: interior maximum approaches the 1D screened profile
  CHECK(max_vertex_value(ua) ==
        doctest::Approx(oracles::slab_screened_max(a)).epsilon(2e-2));
}

TEST_CASE("eigenpair on the square: value, normalization, positivity") {
  const Mesh m = triangulate(build_domain(DomainSpec::unit_square()), {0.04, 20});
  const EigenSolution e = solve_eigenpair(m);
  CHECK(e.lambda == doctest::Approx(2.0 * kPi * kPi).epsilon(2e-3));
  CHECK(e.lambda >= 2.0 * kPi * kPi);  // conforming elements approach from above
  double nrm = 0.0;
  {
    ScalarField sq = e.phi;
    for (double& v : sq.values) v *= v;
    nrm = integrate(m, sq);
  }
  CHECK(nrm == doctest::Approx(1.0).epsilon(5e-3));  // P1 interpolant of phi^2
  for (double v : e.phi.values) CHECK(v >= -1e-12);
}

TEST_CASE("eigenpair on the disk approaches from above") {
  const Mesh m = disk_mesh(0.04);
  const EigenSolution e = solve_eigenpair(m);
  // polygon sits inside the disk, so both effects push the value up
  CHECK(e.lambda >= oracles::disk_lambda1() * (1.0 - 1e-12));
  CHECK(e.lambda == doctest::Approx(oracles::disk_lambda1()).epsilon(3e-3));
}

TEST_CASE("eigenpair survives a clustered spectrum: long thin rectangle") {
  const Mesh m = triangulate(build_domain(DomainSpec::rectangle(50.0)), {0.08, 20});
  const EigenSolution e = solve_eigenpair(m);
  CHECK(e.lambda == doctest::Approx(oracles::rect_lambda1(50.0)).epsilon(5e-3));
  // the ground state is sign-definite
  for (double v : e.phi.values) CHECK(v >= -1e-12);
}

TEST_CASE("eigenpair on a near-degenerate disjoint cluster") {
  const Mesh m = triangulate(build_domain(DomainSpec::ball_cluster(4, 64)), {0.08, 20});
  const EigenSolution e = solve_eigenpair(m);
  // satellites have radius 4^(-1/4) ~ 0.707: their modes sit well above the core's
  CHECK(e.lambda == doctest::Approx(oracles::disk_lambda1()).epsilon(2e-2));
}

TEST_CASE("eigenfunction flux identity") {
  const Mesh m = triangulate(build_domain(DomainSpec::unit_square()), {0.04, 20});
  const EigenSolution e = solve_eigenpair(m);
  const BoundaryField f = boundary_flux(m, e.phi, FluxSource::eigenfunction(e.lambda));
  // total eigen flux equals -lambda * integral(phi)
  const double total = flux_total(m, f);
  const double expect = -e.lambda * integrate(m, e.phi);
  CHECK(total == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("green function: regular part vanishes for the centered pole") {
  const Mesh m = disk_mesh(0.05, 1);
  const GreenSolution g = solve_green(m, {0, 0});
  double mx = 0.0;
  for (double v : g.w.values) mx = std::max(mx, std::abs(v));
  CHECK(mx < 2e-4);  // boundary log term vanishes on the circle up to the polygon defect
}

TEST_CASE("green function: regular part matches the disk mirror formula") {
  const Mesh m = disk_mesh(0.04, 1);
  const Vec2 x0{0.3, 0.1};
  const GreenSolution g = solve_green(m, x0);
  for (const Vec2 p : {Vec2{-0.5, 0.2}, Vec2{0.1, -0.6}, Vec2{0.4, 0.4}}) {
    const double got = eval_field(m, g.w, p);
    const double expect = oracles::disk_green_regular(p, x0);
    CAPTURE(p.x);
    CHECK(std::abs(got - expect) < 5e-4);  // w itself is O(1e-2) here
  }
}

TEST_CASE("green boundary flux sums to -1 by construction") {
  const Mesh m = triangulate(build_domain(DomainSpec::equilateral_triangle()), {0.03, 20});
  const GreenSolution g = solve_green(m, {0.05, 0.02});
  const BoundaryField f = green_boundary_flux(m, g);
  CHECK(std::abs(flux_total(m, f) + 1.0) < 1e-8);
}

TEST_CASE("green pole outside the domain is rejected") {
  const Mesh m = triangulate(build_domain(DomainSpec::unit_square()), {0.1, 20});
  CHECK_THROWS((void)solve_green(m, {2.0, 2.0}));
}

TEST_CASE("scale equivariance of the solvers") {
  const Mesh m = triangulate(build_domain(DomainSpec::unit_square()), {0.06, 20});
  const Mesh s = m.scaled(2.0);
  const ScalarField u1 = solve_torsion(m);
  const ScalarField u2 = solve_torsion(s);
  CHECK(max_vertex_value(u2) == doctest::Approx(4.0 * max_vertex_value(u1)).epsilon(1e-12));
  CHECK(integrate(s, u2) == doctest::Approx(16.0 * integrate(m, u1)).epsilon(1e-12));
  const EigenSolution e1 = solve_eigenpair(m);
  const EigenSolution e2 = solve_eigenpair(s);
  CHECK(e2.lambda == doctest::Approx(0.25 * e1.lambda).epsilon(1e-12));
}
