#include "tlab/functionals.hpp"

#include <cmath>
#include <stdexcept>

#include "tlab/shape_calculus.hpp"

namespace tlab {

FunctionalReport functional_report(const Domain& domain, double h, int levels) {
  if (levels < 2) throw std::invalid_argument("functional_report: need at least two mesh levels");
  const GeometryReport geo = geometry_report(domain);

  FunctionalReport rep;
  rep.domain_label = domain.label;
  rep.area = geo.area;
  rep.perimeter = geo.perimeter;
  rep.convex = geo.convex;

  Mesh mesh = triangulate(domain, MeshParams{h, 20.0});
  std::vector<double> F_by_level, G_by_level;
  for (int lvl = 0; lvl < levels; ++lvl) {
    if (lvl > 0) mesh = refine(mesh);
    const ScalarField u = solve_torsion(mesh);
    const EigenSolution eig = solve_eigenpair(mesh);
    const MaxPoint mp = locate_max(mesh, u);

    LevelRow row;
    row.h = mesh.max_edge();
    row.n_tris = static_cast<int>(mesh.tris.size());
    row.T = integrate(mesh, u);
    row.M = mp.M_refined;
    row.lambda = eig.lambda;
    rep.levels.push_back(row);
    F_by_level.push_back(row.T / (row.M * rep.area));
    G_by_level.push_back(row.M * row.lambda);
    if (lvl == levels - 1) rep.x0 = mp.x0;
  }

  const LevelRow& fine = rep.levels.back();
  const LevelRow& prev = rep.levels[rep.levels.size() - 2];
  rep.T = (4.0 * fine.T - prev.T) / 3.0;
  rep.M = (4.0 * fine.M - prev.M) / 3.0;
  rep.lambda1 = (4.0 * fine.lambda - prev.lambda) / 3.0;
  if (!(rep.T > 0.0 && rep.M > 0.0 && rep.lambda1 > 0.0))
    throw std::runtime_error("functional_report: non-positive extrapolated value, mesh too coarse");
  rep.F = rep.T / (rep.M * rep.area);
  rep.G = rep.M * rep.lambda1;
  rep.F_uncertainty = std::abs(F_by_level.back() - F_by_level[F_by_level.size() - 2]);
  rep.G_uncertainty = std::abs(G_by_level.back() - G_by_level[G_by_level.size() - 2]);
  return rep;
}

CurvatureBounds curvature_bounds(const Domain& domain) {
  CurvatureBounds cb;
  if (domain.loops.size() != 1 || domain.loops[0].hole) {
    cb.reason = "needs a single outer boundary loop";
    return cb;
  }
  const Loop& loop = domain.loops[0];
  if (loop.curve == CurveKind::Polyline) {
    cb.reason = "boundary curvature is not defined for a polygon";
    return cb;
  }
  const GeometryReport geo = geometry_report(domain);
  if (!geo.k_min || !geo.k_max || !(*geo.k_min > 0.0)) {
    cb.reason = "needs strictly positive boundary curvature";
    return cb;
  }
  cb.applicable = true;
  cb.k_min = *geo.k_min;
  cb.k_max = *geo.k_max;
  const double q = cb.k_min / cb.k_max;
  cb.alpha = 0.25 * q * q * q;
  cb.beta = 2.0 - cb.alpha;
  cb.F_low = cb.alpha / (cb.alpha + 1.0);
  cb.F_high = cb.beta / (cb.beta + 1.0);
  cb.F_floor = cb.alpha;
  return cb;
}

namespace {

constexpr double kProductUpperLog = 8.1588830833596715;  // 6 ln 2 + 4
// 3/2 + sqrt(10 + 5 ln 2 / 2) / 4, the sharper two-dimensional constant
constexpr double kProductUpperRoot = 2.3563318556275315;
constexpr double kPiSqOver8 = kPi * kPi / 8.0;

BoundCheck make_upper(const std::string& name, const std::string& ineq, double value, double bound,
                      double allowance) {
  BoundCheck c{name, ineq, bound - value, ""};
  c.status = value <= bound + allowance ? "holds" : "violated";
  return c;
}

BoundCheck make_lower(const std::string& name, const std::string& ineq, double value, double bound,
                      double allowance) {
  BoundCheck c{name, ineq, value - bound, ""};
  c.status = value >= bound - allowance ? "holds" : "violated";
  return c;
}

BoundCheck not_applicable(const std::string& name, const std::string& ineq) {
  return {name, ineq, 0.0, "not-applicable"};
}

}  // namespace

std::vector<BoundCheck> bound_audit(const Domain& domain, const FunctionalReport& report,
                                    double rel_allowance) {
  std::vector<BoundCheck> out;
  const double F = report.F;
  const double G = report.G;
  const double aF = rel_allowance;      // F bounds are all O(1)
  const double aG = rel_allowance * G;  // G bounds scale with the value

  out.push_back(make_upper("ratio-upper", "F <= 1", F, 1.0, aF));
  out.push_back(make_lower("product-lower", "G >= 1", G, 1.0, aG));
  out.push_back(
      make_upper("product-upper-log", "G <= 6 ln 2 + 4", G, kProductUpperLog, aG));
  out.push_back(make_upper("product-upper-root", "G <= 3/2 + sqrt(10 + 5 ln 2 / 2)/4", G,
                           kProductUpperRoot, aG));

  if (report.convex) {
    out.push_back(make_upper("convex-ratio-upper", "F <= 2/3", F, 2.0 / 3.0, aF));
    out.push_back(make_lower("convex-ratio-lower", "F >= 1/9", F, 1.0 / 9.0, aF));
    out.push_back(make_lower("convex-product-lower", "G >= pi^2/8", G, kPiSqOver8, aG));
  } else {
    out.push_back(not_applicable("convex-ratio-upper", "F <= 2/3"));
    out.push_back(not_applicable("convex-ratio-lower", "F >= 1/9"));
    out.push_back(not_applicable("convex-product-lower", "G >= pi^2/8"));
  }

  // Reported, never asserted: the sharp lower bound for F is open.
  {
    BoundCheck c{"ratio-lower-open", "F >= 1/3", F - 1.0 / 3.0, ""};
    c.status = F >= 1.0 / 3.0 - aF ? "conjecture-consistent" : "conjecture-inconsistent";
    out.push_back(c);
  }

  const CurvatureBounds cb = curvature_bounds(domain);
  if (cb.applicable) {
    out.push_back(make_lower("curvature-window-low", "F >= alpha/(alpha+1)", F, cb.F_low, aF));
    out.push_back(make_upper("curvature-window-high", "F <= beta/(beta+1)", F, cb.F_high, aF));
    out.push_back(make_lower("curvature-floor", "F >= alpha", F, cb.F_floor, aF));
  } else {
    out.push_back(not_applicable("curvature-window-low", "F >= alpha/(alpha+1)"));
    out.push_back(not_applicable("curvature-window-high", "F <= beta/(beta+1)"));
    out.push_back(not_applicable("curvature-floor", "F >= alpha"));
  }
  return out;
}

PFunctionCheck p_function_check(const Mesh& mesh, const ScalarField& torsion, double M,
                                bool domain_convex) {
  if (torsion.mesh != &mesh) throw std::invalid_argument("p_function_check: field/mesh mismatch");
  if (!(M > 0.0)) throw std::invalid_argument("p_function_check: M must be positive");

  PFunctionCheck pc;
  pc.applicable = domain_convex;

  const std::vector<Vec2> tg = triangle_gradients(mesh, torsion);
  std::vector<Vec2> g(mesh.nodes.size(), Vec2{0.0, 0.0});
  std::vector<double> w(mesh.nodes.size(), 0.0);
  for (size_t t = 0; t < mesh.tris.size(); ++t) {
    const auto& tri = mesh.tris[t];
    const Vec2 a = mesh.nodes[tri[0]], b = mesh.nodes[tri[1]], c = mesh.nodes[tri[2]];
    const double area = 0.5 * cross(b - a, c - a);
    for (int k = 0; k < 3; ++k) {
      g[tri[k]] = g[tri[k]] + area * tg[t];
      w[tri[k]] += area;
    }
  }
  double max_p = 0.0;
  for (size_t v = 0; v < mesh.nodes.size(); ++v) {
    if (w[v] <= 0.0) continue;
    const Vec2 gv = (1.0 / w[v]) * g[v];
    const double p = dot(gv, gv) + 2.0 * torsion.values[v];
    max_p = std::max(max_p, p);
  }
  pc.max_p = max_p;
  pc.ratio = max_p / (2.0 * M);
  return pc;
}

}  // namespace tlab
