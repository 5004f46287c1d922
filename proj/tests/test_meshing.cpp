#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "tlab/geometry.hpp"
#include "tlab/mesh.hpp"

using namespace tlab;

TEST_CASE("square mesh: area conservation, quality, Euler count") {
  const Domain d = build_domain(DomainSpec::unit_square());
  const Mesh m = triangulate(d, {0.1, 20});
  CHECK(m.area() == doctest::Approx(d.area()).epsilon(1e-13));
  CHECK(m.min_angle_deg() >= 20.0);
  CHECK(m.max_edge() <= 0.1 * 1.5);
  const MeshQuality q = mesh_quality(m);
  CHECK(q.euler_ok);
  CHECK(q.n_tris > 100);
}

TEST_CASE("refinement: 4x triangles, preserved area, finer edges") {
  const Domain d = build_domain(DomainSpec::unit_square());
  const Mesh m = triangulate(d, {0.1, 20});
  const Mesh f = refine(m);
  CHECK(f.tris.size() == 4 * m.tris.size());
  CHECK(f.area() == doctest::Approx(m.area()).epsilon(1e-13));
  CHECK(f.max_edge() == doctest::Approx(0.5 * m.max_edge()).epsilon(1e-12));
  CHECK(mesh_quality(f).euler_ok);
}

TEST_CASE("snapped refinement keeps disk boundary nodes on the circle") {
  const Domain d = build_domain(DomainSpec::disk({0, 0}, 1.0, 128));
  Mesh m = triangulate(d, {0.1, 20});
  m = refine(refine(m));
  for (int i : m.boundary_nodes()) CHECK(std::abs(norm(m.nodes[i]) - 1.0) < 1e-14);
  // area defect shrinks with snapping: 512 effective segments
  CHECK(1.0 - m.area() / kPi > 0.0);
  CHECK(1.0 - m.area() / kPi < 3e-5);
}

TEST_CASE("snapped refinement keeps ellipse boundary nodes on the curve") {
  const Domain d = build_domain(DomainSpec::ellipse(2.0, 1.0, 128));
  Mesh m = refine(triangulate(d, {0.1, 20}));
  for (int i : m.boundary_nodes()) {
    const Vec2 p = m.nodes[i];
    CHECK(std::abs(p.x * p.x / 4.0 + p.y * p.y - 1.0) < 1e-12);
  }
}

TEST_CASE("perforated mesh: holes resolved, Euler count with holes") {
  PerforationParams p;
  p.epsilon = 0.125;
  p.C0 = 0.05;
  const Domain d = build_domain(DomainSpec::perforated(DomainSpec::unit_square(), p));
  const Mesh m = triangulate(d, {0.02, 20});
  // hole circles are re-snapped at mesh resolution: the meshed area sits
  // between the exact circular-hole value and the coarse stored polygons
  const double exact = 1.0 - 16.0 * kPi * p.hole_radius() * p.hole_radius();
  CHECK(m.area() >= exact - 1e-12);
  CHECK(m.area() <= d.area() + 1e-12);
  CHECK(mesh_quality(m).euler_ok);
  std::set<int> loops_touched;
  for (int li : m.bedge_loop) loops_touched.insert(li);
  CHECK(loops_touched.size() == 17);  // outer square + 16 holes
}

TEST_CASE("boundary edges are oriented with the domain on the left") {
  const Domain d = build_domain(DomainSpec::unit_square());
  const Mesh m = triangulate(d, {0.2, 20});
  double signed_len = 0.0;
  for (const auto& e : m.bedges) {
    const Vec2 a = m.nodes[e[0]], b = m.nodes[e[1]];
    const Vec2 mid = 0.5 * (a + b);
    const Vec2 n{(b - a).y, -(b - a).x};  // outward normal
    // a point nudged along the outward normal leaves the domain
    CHECK_FALSE(point_in_domain(d, mid + (1e-7 / norm(n)) * n));
    signed_len += norm(b - a);
  }
  CHECK(signed_len == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("mesh too coarse for a feature names the loop") {
  PerforationParams p;
  p.epsilon = 0.125;
  p.C0 = 0.05;  // hole radius ~0.041
  const Domain d = build_domain(DomainSpec::perforated(DomainSpec::unit_square(), p));
  CHECK_THROWS_WITH_AS((void)triangulate(d, {0.5, 20}), doctest::Contains("loop"),
                       std::invalid_argument);
}

TEST_CASE("scaled mesh: exact coordinate scaling, same topology") {
  const Domain d = build_domain(DomainSpec::unit_square());
  const Mesh m = triangulate(d, {0.1, 20});
  const Mesh s = m.scaled(2.0);
  REQUIRE(s.nodes.size() == m.nodes.size());
  REQUIRE(s.tris.size() == m.tris.size());
  for (size_t i = 0; i < m.nodes.size(); ++i) {
    CHECK(s.nodes[i].x == 2.0 * m.nodes[i].x);
    CHECK(s.nodes[i].y == 2.0 * m.nodes[i].y);
  }
  CHECK(s.area() == doctest::Approx(4.0 * m.area()).epsilon(1e-14));
}
