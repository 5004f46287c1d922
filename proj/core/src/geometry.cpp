#include "tlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tlab {

namespace {

constexpr double kAreaTol = 1e-14;

Loop make_polyline_loop(std::vector<Vec2> pts, bool hole) {
  Loop loop;
  loop.pts = std::move(pts);
  loop.hole = hole;
  loop.curve = CurveKind::Polyline;
  return loop;
}

Loop make_circle_loop(Vec2 center, double radius, int segments, bool hole) {
  if (segments < 12) throw std::invalid_argument("circle needs >= 12 segments");
  Loop loop;
  loop.curve = CurveKind::Circle;
  loop.center = center;
  loop.rx = loop.ry = radius;
  loop.hole = hole;
  loop.pts.reserve(segments);
  for (int i = 0; i < segments; ++i) {
    // holes run clockwise
    const double t = 2.0 * kPi * i / segments * (hole ? -1.0 : 1.0);
    loop.pts.push_back({center.x + radius * std::cos(t), center.y + radius * std::sin(t)});
  }
  return loop;
}

Loop make_ellipse_loop(Vec2 center, double a, double b, int segments) {
  if (segments < 12) throw std::invalid_argument("ellipse needs >= 12 segments");
  Loop loop;
  loop.curve = CurveKind::Ellipse;
  loop.center = center;
  loop.rx = a;
  loop.ry = b;
  loop.pts.reserve(segments);
  for (int i = 0; i < segments; ++i) {
    const double t = 2.0 * kPi * i / segments;
    loop.pts.push_back({center.x + a * std::cos(t), center.y + b * std::sin(t)});
  }
  return loop;
}

bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const double d1 = cross(b - a, c - a);
  const double d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c);
  const double d4 = cross(d - c, b - c);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  return false;
}

struct BBox {
  double xmin = std::numeric_limits<double>::max();
  double xmax = std::numeric_limits<double>::lowest();
  double ymin = std::numeric_limits<double>::max();
  double ymax = std::numeric_limits<double>::lowest();

  void add(Vec2 p) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  bool overlaps(const BBox& o) const {
    return xmin <= o.xmax && o.xmin <= xmax && ymin <= o.ymax && o.ymin <= ymax;
  }
};

BBox loop_bbox(const Loop& loop) {
  BBox b;
  for (const Vec2& p : loop.pts) b.add(p);
  return b;
}

bool point_in_polygon(std::span<const Vec2> pts, Vec2 p) {
  bool inside = false;
  const std::size_t n = pts.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2 a = pts[j], b = pts[i];
    if ((b.y > p.y) != (a.y > p.y)) {
      const double xi = b.x + (p.y - b.y) * (a.x - b.x) / (a.y - b.y);
      if (p.x < xi) inside = !inside;
    }
  }
  return inside;
}

bool loops_boundaries_intersect(const Loop& la, const Loop& lb) {
  const std::size_t n = la.pts.size(), m = lb.pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a0 = la.pts[i], a1 = la.pts[(i + 1) % n];
    for (std::size_t j = 0; j < m; ++j) {
      if (segments_intersect(a0, a1, lb.pts[j], lb.pts[(j + 1) % m])) return true;
    }
  }
  return false;
}

void validate_domain(const Domain& dom) {
  if (dom.loops.empty()) throw std::invalid_argument("domain has no loops");
  for (const Loop& loop : dom.loops) {
    if (loop.pts.size() < 3) throw std::invalid_argument("loop needs >= 3 vertices");
    if (!polygon_is_simple(loop.pts))
      throw std::invalid_argument("self-intersecting boundary loop in '" + dom.label + "'");
    const double sa = loop.signed_area();
    if (!loop.hole && sa <= kAreaTol)
      throw std::invalid_argument("outer loop must have positive area");
    if (loop.hole && sa >= -kAreaTol)
      throw std::invalid_argument("hole loop must have negative signed area");
  }
  std::vector<BBox> boxes;
  boxes.reserve(dom.loops.size());
  for (const Loop& loop : dom.loops) boxes.push_back(loop_bbox(loop));
  for (std::size_t i = 0; i < dom.loops.size(); ++i) {
    for (std::size_t j = i + 1; j < dom.loops.size(); ++j) {
      if (!boxes[i].overlaps(boxes[j])) continue;
      if (loops_boundaries_intersect(dom.loops[i], dom.loops[j]))
        throw std::invalid_argument("boundary loops intersect");
    }
  }
  // every hole must sit strictly inside one outer loop
  for (const Loop& hole : dom.loops) {
    if (!hole.hole) continue;
    bool contained = false;
    for (const Loop& outer : dom.loops) {
      if (outer.hole) continue;
      if (point_in_polygon(outer.pts, hole.pts.front())) {
        contained = true;
        break;
      }
    }
    if (!contained) throw std::invalid_argument("hole loop lies outside every outer loop");
  }
}

}  // namespace

double Loop::signed_area() const { return polygon_signed_area(pts); }
double Loop::length() const { return polygon_length(pts); }

double Domain::area() const {
  double a = 0.0;
  for (const Loop& loop : loops) a += loop.signed_area();
  return a;
}

double polygon_signed_area(std::span<const Vec2> pts) {
  double s = 0.0;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = pts[i], b = pts[(i + 1) % n];
    s += cross(a, b);
  }
  return 0.5 * s;
}

double polygon_length(std::span<const Vec2> pts) {
  double s = 0.0;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) s += dist(pts[i], pts[(i + 1) % n]);
  return s;
}

Vec2 polygon_centroid(std::span<const Vec2> pts) {
  double a = 0.0, cx = 0.0, cy = 0.0;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 p = pts[i], q = pts[(i + 1) % n];
    const double w = cross(p, q);
    a += w;
    cx += (p.x + q.x) * w;
    cy += (p.y + q.y) * w;
  }
  if (std::abs(a) < kAreaTol) throw std::invalid_argument("degenerate polygon (zero area)");
  return {cx / (3.0 * a), cy / (3.0 * a)};
}

bool polygon_is_simple(std::span<const Vec2> pts) {
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a0 = pts[i], a1 = pts[(i + 1) % n];
    for (std::size_t j = i + 1; j < n; ++j) {
      // skip edges sharing a vertex
      if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
      if (segments_intersect(a0, a1, pts[j], pts[(j + 1) % n])) return false;
    }
  }
  return true;
}

bool polygon_is_convex(std::span<const Vec2> pts) {
  const std::size_t n = pts.size();
  if (n < 3) return false;
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, dist(pts[i], pts[(i + 1) % n]));
  const double tol = -1e-12 * scale * scale;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e0 = pts[(i + 1) % n] - pts[i];
    const Vec2 e1 = pts[(i + 2) % n] - pts[(i + 1) % n];
    if (cross(e0, e1) < tol) return false;
  }
  return polygon_signed_area(pts) > 0.0;
}

std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }),
            pts.end());
  const std::size_t n = pts.size();
  if (n < 3) return pts;
  std::vector<Vec2> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {  // lower
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {  // upper
    while (k >= t && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

bool point_in_domain(const Domain& domain, Vec2 p) {
  // crossing parity across all loops handles holes and disjoint unions alike
  bool inside = false;
  for (const Loop& loop : domain.loops)
    if (point_in_polygon(loop.pts, p)) inside = !inside;
  return inside;
}

double distance_to_boundary(const Domain& domain, Vec2 p) {
  double best = std::numeric_limits<double>::max();
  for (const Loop& loop : domain.loops) {
    const std::size_t n = loop.pts.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 a = loop.pts[i], b = loop.pts[(i + 1) % n];
      const Vec2 ab = b - a;
      const double len2 = dot(ab, ab);
      double t = len2 > 0 ? dot(p - a, ab) / len2 : 0.0;
      t = std::clamp(t, 0.0, 1.0);
      best = std::min(best, dist(p, a + t * ab));
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// DomainSpec factories

DomainSpec DomainSpec::polygon(std::vector<Vec2> verts, std::string label) {
  DomainSpec s;
  s.kind = Kind::Polygon;
  s.vertices = std::move(verts);
  s.label = std::move(label);
  return s;
}

DomainSpec DomainSpec::unit_square() {
  return polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, "square");
}

DomainSpec DomainSpec::disk(Vec2 center, double radius, int segments) {
  DomainSpec s;
  s.kind = Kind::Disk;
  s.center = center;
  s.radius = radius;
  s.segments = segments;
  s.label = "disk";
  return s;
}

DomainSpec DomainSpec::ellipse(double a, double b, int segments) {
  DomainSpec s;
  s.kind = Kind::Ellipse;
  s.a = a;
  s.b = b;
  s.segments = segments;
  s.label = "ellipse";
  return s;
}

DomainSpec DomainSpec::equilateral_triangle(double side) {
  DomainSpec s;
  s.kind = Kind::EquilateralTriangle;
  s.side = side;
  s.label = "triangle";
  return s;
}

DomainSpec DomainSpec::rectangle(double n) {
  DomainSpec s;
  s.kind = Kind::Rectangle;
  s.half_width = n;
  s.label = "rectangle";
  return s;
}

DomainSpec DomainSpec::ball_cluster(int n, int segments) {
  DomainSpec s;
  s.kind = Kind::BallCluster;
  s.count = n;
  s.segments = segments;
  s.label = "cluster";
  return s;
}

DomainSpec DomainSpec::perforated(DomainSpec base, PerforationParams p) {
  DomainSpec s;
  s.kind = Kind::Perforated;
  s.base = std::make_shared<const DomainSpec>(std::move(base));
  s.perforation = p;
  s.label = "perforated " + s.base->label;
  return s;
}

// ---------------------------------------------------------------------------
// build_domain

namespace {

Domain build_cluster(int n, int segments) {
  if (n < 1) throw std::invalid_argument("cluster count must be >= 1");
  const double r = std::pow(double(n), -0.25);
  Domain dom;
  dom.label = "cluster(" + std::to_string(n) + ")";
  dom.loops.push_back(make_circle_loop({0, 0}, 1.0, segments, false));
  // deterministic square grid to the right of the unit disk, pitch 6r keeps
  // every gap >= 4r
  const int cols = static_cast<int>(std::ceil(std::sqrt(double(n))));
  const double pitch = 6.0 * r;
  const double x0 = 1.0 + 5.0 * r;
  int placed = 0;
  for (int i = 0; placed < n; ++i) {
    for (int j = 0; j < cols && placed < n; ++j) {
      const Vec2 c{x0 + pitch * i, (j - 0.5 * (cols - 1)) * pitch};
      if (std::abs(c.x) > 64.0 || std::abs(c.y) > 64.0)
        throw std::invalid_argument("cluster placement exceeds bounding box");
      dom.loops.push_back(make_circle_loop(c, r, segments, false));
      ++placed;
    }
  }
  return dom;
}

Domain build_perforated(const DomainSpec& spec) {
  if (!spec.base) throw std::invalid_argument("perforated spec without base");
  Domain base = build_domain(*spec.base);
  const PerforationParams& p = spec.perforation;
  const double r = p.hole_radius();
  if (!(r < p.epsilon))
    throw std::invalid_argument("perforation holes overlap the lattice cells (r >= eps)");
  if (r < spec.min_feature)
    throw std::invalid_argument(
        "perforation radius " + std::to_string(r) +
        " below minimum feature size; the homogenized study carries the eps->0 limit");

  BBox box;
  for (const Loop& loop : base.loops)
    for (const Vec2& q : loop.pts) box.add(q);

  Domain dom = base;
  dom.label = "perforated " + base.label;
  const double period = 2.0 * p.epsilon;
  const double clearance = r + 0.25 * p.epsilon;
  const int i0 = static_cast<int>(std::floor(box.xmin / period)) - 1;
  const int i1 = static_cast<int>(std::ceil(box.xmax / period)) + 1;
  const int j0 = static_cast<int>(std::floor(box.ymin / period)) - 1;
  const int j1 = static_cast<int>(std::ceil(box.ymax / period)) + 1;
  for (int i = i0; i <= i1; ++i) {
    for (int j = j0; j <= j1; ++j) {
      // cell centers of the period-2eps lattice, so holes stay interior
      const Vec2 c{(i + 0.5) * period, (j + 0.5) * period};
      if (!point_in_domain(base, c)) continue;
      if (distance_to_boundary(base, c) < clearance) continue;
      dom.loops.push_back(make_circle_loop(c, r, 16, true));
    }
  }
  return dom;
}

}  // namespace

Domain build_domain(const DomainSpec& spec) {
  Domain dom;
  switch (spec.kind) {
    case DomainSpec::Kind::Polygon: {
      if (spec.vertices.size() < 3) throw std::invalid_argument("polygon needs >= 3 vertices");
      std::vector<Vec2> verts = spec.vertices;
      if (polygon_signed_area(verts) < 0.0) std::reverse(verts.begin(), verts.end());
      dom.loops.push_back(make_polyline_loop(std::move(verts), false));
      dom.label = spec.label.empty() ? "polygon" : spec.label;
      break;
    }
    case DomainSpec::Kind::Disk:
      dom.loops.push_back(make_circle_loop(spec.center, spec.radius, spec.segments, false));
      dom.label = "disk";
      break;
    case DomainSpec::Kind::Ellipse:
      dom.loops.push_back(make_ellipse_loop(spec.center, spec.a, spec.b, spec.segments));
      dom.label = "ellipse(" + std::to_string(spec.a) + "," + std::to_string(spec.b) + ")";
      break;
    case DomainSpec::Kind::EquilateralTriangle: {
      const double s = spec.side;
      const double y0 = -s / (2.0 * std::sqrt(3.0));
      const double y1 = s / std::sqrt(3.0);
      dom.loops.push_back(
          make_polyline_loop({{-0.5 * s, y0}, {0.5 * s, y0}, {0.0, y1}}, false));
      dom.label = "triangle";
      break;
    }
    case DomainSpec::Kind::Rectangle: {
      const double n = spec.half_width;
      if (n <= 0) throw std::invalid_argument("rectangle half-width must be positive");
      dom.loops.push_back(make_polyline_loop({{-n, 0}, {n, 0}, {n, 1}, {-n, 1}}, false));
      dom.label = "rectangle(" + std::to_string(n) + ")";
      break;
    }
    case DomainSpec::Kind::BallCluster:
      dom = build_cluster(spec.count, spec.segments);
      break;
    case DomainSpec::Kind::Perforated:
      dom = build_perforated(spec);
      break;
  }
  if (!spec.label.empty()) dom.label = spec.label;
  validate_domain(dom);
  return dom;
}

// ---------------------------------------------------------------------------
// geometry_report

namespace {

double hull_minimal_width(const std::vector<Vec2>& hull) {
  const std::size_t n = hull.size();
  if (n < 3) return 0.0;
  double best = std::numeric_limits<double>::max();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = hull[i], b = hull[(i + 1) % n];
    const double len = dist(a, b);
    if (len < 1e-300) continue;
    double far = 0.0;
    for (const Vec2& p : hull) far = std::max(far, std::abs(cross(b - a, p - a)) / len);
    best = std::min(best, far);
  }
  return best;
}

}  // namespace

GeometryReport geometry_report(const Domain& domain) {
  GeometryReport rep;
  rep.area = domain.area();
  if (rep.area <= 0.0) throw std::invalid_argument("domain area must be positive");
  for (const Loop& loop : domain.loops) rep.perimeter += loop.length();

  const bool single_outer =
      domain.loops.size() == 1 && !domain.loops.front().hole;
  rep.convex = single_outer && polygon_is_convex(domain.loops.front().pts);

  std::vector<Vec2> all;
  for (const Loop& loop : domain.loops)
    if (!loop.hole) all.insert(all.end(), loop.pts.begin(), loop.pts.end());
  rep.minimal_width = hull_minimal_width(convex_hull(std::move(all)));

  if (single_outer) {
    const Loop& loop = domain.loops.front();
    if (loop.curve == CurveKind::Circle) {
      rep.k_min = rep.k_max = 1.0 / loop.rx;
    } else if (loop.curve == CurveKind::Ellipse) {
      const double a = std::max(loop.rx, loop.ry);
      const double b = std::min(loop.rx, loop.ry);
      rep.k_min = b / (a * a);
      rep.k_max = a / (b * b);
    }
  }
  return rep;
}

Vec2 loop_snapped_midpoint(const Loop& loop, Vec2 a, Vec2 b) {
  switch (loop.curve) {
    case CurveKind::Circle: {
      const Vec2 m = 0.5 * (a + b);
      const Vec2 d = m - loop.center;
      const double n = norm(d);
      if (n < 1e-300) return m;
      return loop.center + (loop.rx / n) * d;
    }
    case CurveKind::Ellipse: {
      const double ta = std::atan2((a.y - loop.center.y) / loop.ry, (a.x - loop.center.x) / loop.rx);
      const double tb = std::atan2((b.y - loop.center.y) / loop.ry, (b.x - loop.center.x) / loop.rx);
      double dt = tb - ta;
      while (dt > kPi) dt -= 2.0 * kPi;
      while (dt < -kPi) dt += 2.0 * kPi;
      const double tm = ta + 0.5 * dt;
      return {loop.center.x + loop.rx * std::cos(tm), loop.center.y + loop.ry * std::sin(tm)};
    }
    case CurveKind::Polyline:
      break;
  }
  return 0.5 * (a + b);
}

// ---------------------------------------------------------------------------
// convex_project

std::vector<Vec2> convex_project(const std::vector<Vec2>& vertices) {
  if (vertices.size() < 3) throw std::invalid_argument("convex_project needs >= 3 vertices");
  std::vector<Vec2> verts = vertices;
  if (polygon_signed_area(verts) < 0.0) std::reverse(verts.begin(), verts.end());
  const Vec2 c = polygon_centroid(verts);  // throws on degenerate input

  const std::vector<Vec2> hull = convex_hull(verts);
  if (hull.size() < 3) throw std::invalid_argument("convex_project: degenerate input");
  double scale = 0.0;
  for (const Vec2& p : hull) scale = std::max(scale, dist(p, c));

  std::vector<Vec2> out;
  out.reserve(verts.size());
  for (const Vec2& v : verts) {
    // keep vertices already on the hull boundary (within rounding)
    bool on_hull = false;
    for (std::size_t i = 0; i < hull.size() && !on_hull; ++i) {
      const Vec2 a = hull[i], b = hull[(i + 1) % hull.size()];
      const Vec2 ab = b - a;
      const double len2 = dot(ab, ab);
      const double t = len2 > 0 ? std::clamp(dot(v - a, ab) / len2, 0.0, 1.0) : 0.0;
      if (dist(v, a + t * ab) <= 1e-12 * scale) on_hull = true;
    }
    if (on_hull) {
      out.push_back(v);
      continue;
    }
    // radial projection of an interior (reflex) vertex onto the hull
    const Vec2 d = v - c;
    double best_t = std::numeric_limits<double>::max();
    for (std::size_t i = 0; i < hull.size(); ++i) {
      const Vec2 a = hull[i], b = hull[(i + 1) % hull.size()];
      const double den = cross(d, b - a);
      if (std::abs(den) < 1e-300) continue;
      const double t = cross(a - c, b - a) / den;  // along the ray c + t d
      const double s = cross(a - c, d) / den;      // along the edge a + s (b-a)
      if (t > 0.0 && s >= -1e-12 && s <= 1.0 + 1e-12) best_t = std::min(best_t, t);
    }
    if (best_t == std::numeric_limits<double>::max())
      throw std::runtime_error("convex_project: centroid ray misses hull");
    out.push_back(c + best_t * d);
  }
  return out;
}

}  // namespace tlab
