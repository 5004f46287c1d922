#pragma once

#include <cmath>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tlab {

inline constexpr double kPi = 3.14159265358979323846;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double dist(Vec2 a, Vec2 b) { return norm(a - b); }

/// Analytic description of a boundary loop, kept alongside the polyline so
/// curvature can be read exactly and refined meshes can snap back to the
/// true curve.
enum class CurveKind { Polyline, Circle, Ellipse };

/// One closed boundary loop. Outer loops run counter-clockwise (positive
/// signed area), hole loops clockwise (negative signed area).
struct Loop {
  std::vector<Vec2> pts;
  bool hole = false;
  CurveKind curve = CurveKind::Polyline;
  Vec2 center{0.0, 0.0};
  double rx = 0.0;  // semi-axis along x (circle: rx == ry == radius)
  double ry = 0.0;

  double signed_area() const;
  double length() const;
};

/// A plane open set given by its boundary loops. Disjoint unions are
/// allowed (several outer loops), holes must lie strictly inside an outer
/// loop. Immutable after construction by convention.
struct Domain {
  std::vector<Loop> loops;
  std::string label;

  double area() const;  // shoelace, holes counted negative
};

struct GeometryReport {
  double area = 0.0;
  double perimeter = 0.0;
  double minimal_width = 0.0;  // between parallel supporting lines (convex hull)
  bool convex = false;
  std::optional<double> k_min;  // analytic loops only
  std::optional<double> k_max;
};

/// Lattice perforation parameters; hole radius follows the 2D scaling
/// r = exp(-C0/eps^2), the screened-limit constant is a = pi/(2 C0).
struct PerforationParams {
  double epsilon = 0.125;
  double C0 = 0.05;

  double hole_radius() const { return std::exp(-C0 / (epsilon * epsilon)); }
  double strange_term() const { return kPi / (2.0 * C0); }
};

/// Declarative description of a domain; build_domain turns it into loops.
struct DomainSpec {
  enum class Kind {
    Polygon,
    Disk,
    Ellipse,
    EquilateralTriangle,
    Rectangle,
    BallCluster,
    Perforated,
  };

  Kind kind = Kind::Polygon;
  std::vector<Vec2> vertices;       // Polygon
  Vec2 center{0.0, 0.0};            // Disk / Ellipse
  double radius = 1.0;              // Disk
  double a = 1.0, b = 1.0;          // Ellipse semi-axes
  double side = 1.0;                // EquilateralTriangle
  double half_width = 1.0;          // Rectangle (-n,n)x(0,1)
  int count = 1;                    // BallCluster
  int segments = 256;               // polygonalization of curved loops
  std::shared_ptr<const DomainSpec> base;  // Perforated
  PerforationParams perforation;
  double min_feature = 1e-3;        // smallest polygonalizable hole radius
  std::string label;

  static DomainSpec polygon(std::vector<Vec2> verts, std::string label = "polygon");
  static DomainSpec unit_square();
  static DomainSpec disk(Vec2 center, double radius, int segments = 256);
  static DomainSpec ellipse(double a, double b, int segments = 256);
  static DomainSpec equilateral_triangle(double side = 1.0);
  static DomainSpec rectangle(double n);
  static DomainSpec ball_cluster(int n, int segments = 64);
  static DomainSpec perforated(DomainSpec base, PerforationParams p);
};

/// Builds and validates the boundary loops of a domain spec.
/// Throws std::invalid_argument on self-intersecting polygons, impossible
/// cluster placement, or perforation radii below the minimum feature size.
Domain build_domain(const DomainSpec& spec);

GeometryReport geometry_report(const Domain& domain);

/// Radial projection of a polygon onto its own convex hull: every vertex
/// that breaks convexity is moved along the ray from the centroid onto the
/// hull boundary. Convex inputs come back unchanged.
std::vector<Vec2> convex_project(const std::vector<Vec2>& vertices);

// -- polygon utilities shared across modules --

double polygon_signed_area(std::span<const Vec2> pts);
double polygon_length(std::span<const Vec2> pts);
Vec2 polygon_centroid(std::span<const Vec2> pts);
bool polygon_is_simple(std::span<const Vec2> pts);
bool polygon_is_convex(std::span<const Vec2> pts);
std::vector<Vec2> convex_hull(std::vector<Vec2> pts);

// Midpoint of a boundary chord placed back on the loop's analytic curve
// (circles radially, ellipses in parameter); plain midpoint for polylines.
Vec2 loop_snapped_midpoint(const Loop& loop, Vec2 a, Vec2 b);

/// Even-odd (crossing parity) point location over all loops of a domain.
bool point_in_domain(const Domain& domain, Vec2 p);

/// Distance from p to the closest point of any boundary loop.
double distance_to_boundary(const Domain& domain, Vec2 p);

}  // namespace tlab
