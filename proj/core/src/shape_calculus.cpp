#include "tlab/shape_calculus.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace tlab {

namespace {

std::vector<std::vector<int>> vertex_adjacency(const Mesh& mesh) {
  std::vector<std::vector<int>> adj(mesh.nodes.size());
  auto link = [&](int a, int b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  };
  for (const auto& t : mesh.tris) {
    link(t[0], t[1]);
    link(t[1], t[2]);
    link(t[2], t[0]);
  }
  for (auto& nbrs : adj) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  }
  return adj;
}

double segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 d = b - a;
  const double len2 = dot(d, d);
  double t = len2 > 0.0 ? dot(p - a, d) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return dist(p, a + t * d);
}

double boundary_distance(const Mesh& mesh, Vec2 p) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& e : mesh.bedges)
    best = std::min(best, segment_distance(p, mesh.nodes[e[0]], mesh.nodes[e[1]]));
  return best;
}

}  // namespace

MaxPoint locate_max(const Mesh& mesh, const ScalarField& torsion) {
  if (torsion.mesh != &mesh) throw std::invalid_argument("locate_max: field/mesh mismatch");
  const auto& u = torsion.values;
  const auto adj = vertex_adjacency(mesh);

  int gv = 0;
  for (size_t v = 1; v < u.size(); ++v)
    if (u[v] > u[gv]) gv = static_cast<int>(v);

  // Strict interior local maxima, ignoring the near-boundary noise floor.
  const double floor_val = 0.05 * u[gv];
  std::vector<int> maxima;
  for (size_t v = 0; v < u.size(); ++v) {
    if (mesh.on_boundary[v] || u[v] <= floor_val) continue;
    bool is_max = true;
    for (int w : adj[v])
      if (u[w] >= u[v]) {
        is_max = false;
        break;
      }
    if (is_max) maxima.push_back(static_cast<int>(v));
  }
  if (maxima.empty()) maxima.push_back(gv);

  // Merge maxima that are only a few elements apart: distinct peaks of the
  // torsion function sit at component scale, anything closer is mesh noise.
  std::sort(maxima.begin(), maxima.end(), [&](int a, int b) { return u[a] > u[b]; });
  const double merge_radius = 5.0 * mesh.max_edge();
  std::vector<int> peaks;
  for (int v : maxima) {
    bool absorbed = false;
    for (int p : peaks)
      if (dist(mesh.nodes[v], mesh.nodes[p]) < merge_radius) {
        absorbed = true;
        break;
      }
    if (!absorbed) peaks.push_back(v);
  }

  MaxPoint mp;
  mp.unique = peaks.size() == 1;
  for (size_t i = 1; i < peaks.size(); ++i) mp.other_maxima.push_back(mesh.nodes[peaks[i]]);

  // Quadratic least-squares fit over the 2-ring of the top vertex, then one
  // Newton step of the fitted paraboloid.
  const int top = peaks.empty() ? gv : peaks[0];
  std::set<int> patch{top};
  for (int ring = 0; ring < 2 || patch.size() < 8; ++ring) {
    if (ring > 4) break;
    std::set<int> next = patch;
    for (int v : patch)
      for (int w : adj[v]) next.insert(w);
    patch = std::move(next);
  }

  const Vec2 p0 = mesh.nodes[top];
  double rad = 0.0;
  for (int v : patch) rad = std::max(rad, dist(mesh.nodes[v], p0));
  if (rad <= 0.0) rad = mesh.max_edge();

  Eigen::MatrixXd A(patch.size(), 6);
  Eigen::VectorXd rhs(patch.size());
  int row = 0;
  for (int v : patch) {
    const double dx = (mesh.nodes[v].x - p0.x) / rad;
    const double dy = (mesh.nodes[v].y - p0.y) / rad;
    A(row, 0) = 1.0;
    A(row, 1) = dx;
    A(row, 2) = dy;
    A(row, 3) = dx * dx;
    A(row, 4) = dx * dy;
    A(row, 5) = dy * dy;
    rhs(row) = u[v];
    ++row;
  }
  const Eigen::VectorXd c = A.colPivHouseholderQr().solve(rhs);

  // Back to unscaled coordinates.
  const double c1 = c(1) / rad, c2 = c(2) / rad;
  const double c3 = c(3) / (rad * rad), c4 = c(4) / (rad * rad), c5 = c(5) / (rad * rad);
  mp.hessian = {2.0 * c3, c4, 2.0 * c5};

  const double det = 4.0 * c3 * c5 - c4 * c4;
  Vec2 step{0.0, 0.0};
  if (det > 0.0 && c3 < 0.0) {
    step.x = -(2.0 * c5 * c1 - c4 * c2) / det;
    step.y = -(2.0 * c3 * c2 - c4 * c1) / det;
    const double sn = norm(step);
    if (sn > rad) step = (rad / sn) * step;
  }
  const double fitted = c(0) + c1 * step.x + c2 * step.y + c3 * step.x * step.x +
                        c4 * step.x * step.y + c5 * step.y * step.y;
  if (fitted >= u[top]) {
    mp.x0 = p0 + step;
    mp.M_refined = fitted;
  } else {
    mp.x0 = p0;
    mp.M_refined = u[top];
  }
  return mp;
}

CriticalityData criticality_data(const Domain& domain, double h, int refinements) {
  CriticalityData data;
  {
    Mesh m = triangulate(domain, MeshParams{h, 20.0});
    for (int i = 0; i < refinements; ++i) m = refine(m);
    data.mesh = std::make_shared<const Mesh>(std::move(m));
  }
  const Mesh& mesh = *data.mesh;
  data.u = solve_torsion(mesh);
  data.eigen = solve_eigenpair(mesh);
  data.max_point = locate_max(mesh, data.u);
  data.green = solve_green(mesh, data.max_point.x0);
  data.flux_u = boundary_flux(mesh, data.u, FluxSource::torsion());
  data.flux_phi = boundary_flux(mesh, data.eigen.phi, FluxSource::eigenfunction(data.eigen.lambda));
  data.flux_green = green_boundary_flux(mesh, data.green);
  data.M = data.max_point.M_refined;
  data.lambda1 = data.eigen.lambda;
  double per = 0.0;
  for (const auto& e : mesh.bedges) per += dist(mesh.nodes[e[0]], mesh.nodes[e[1]]);
  data.perimeter = per;
  return data;
}

BoundaryField optimality_residual(const CriticalityData& data) {
  BoundaryField rho;
  rho.mesh = data.mesh.get();
  rho.edge_value.resize(data.mesh->bedges.size());
  for (size_t e = 0; e < rho.edge_value.size(); ++e) {
    const double fu = data.flux_u.edge_value[e];
    const double fg = data.flux_green.edge_value[e];
    const double fp = data.flux_phi.edge_value[e];
    rho.edge_value[e] = data.lambda1 * fu * fg - data.M * fp * fp;
  }
  return rho;
}

BoundaryField optimality_residual(const Domain& domain, double h, int refinements) {
  const CriticalityData data = criticality_data(domain, h, refinements);
  BoundaryField rho = optimality_residual(data);
  // Detach from the mesh that dies with `data`: callers of this overload get
  // values only.
  rho.mesh = nullptr;
  return rho;
}

DerivativeReport shape_derivative(const CriticalityData& data, const ShapeVelocity& V,
                                  bool domain_convex) {
  DerivativeReport rep;
  rep.M = data.M;
  rep.lambda1 = data.lambda1;
  rep.G = data.M * data.lambda1;
  rep.beyond_hypotheses = !domain_convex;

  const Mesh& mesh = *data.mesh;
  double Mp = 0.0, lp = 0.0;
  for (size_t e = 0; e < mesh.bedges.size(); ++e) {
    const Vec2 a = mesh.nodes[mesh.bedges[e][0]];
    const Vec2 b = mesh.nodes[mesh.bedges[e][1]];
    const Vec2 t = b - a;
    const double L = norm(t);
    if (L <= 0.0) continue;
    const Vec2 n{t.y / L, -t.x / L};  // domain lies left of the edge
    const double vn = dot(V.V(0.5 * (a + b)), n);
    Mp += data.flux_u.edge_value[e] * data.flux_green.edge_value[e] * vn * L;
    lp -= data.flux_phi.edge_value[e] * data.flux_phi.edge_value[e] * vn * L;
  }
  rep.M_prime = Mp;
  rep.lambda1_prime = lp;
  rep.G_prime = data.lambda1 * Mp + data.M * lp;
  return rep;
}

DerivativeReport shape_derivative(const Domain& domain, const ShapeVelocity& V, double h,
                                  int refinements) {
  const GeometryReport geo = geometry_report(domain);
  const CriticalityData data = criticality_data(domain, h, refinements);
  return shape_derivative(data, V, geo.convex);
}

double green_value(const CriticalityData& data, Vec2 x) {
  const double r = dist(x, data.green.x0);
  if (r <= 0.0) throw std::invalid_argument("green_value: point coincides with the pole");
  return -std::log(r) / (2.0 * kPi) + eval_field(*data.mesh, data.green.w, x);
}

std::vector<TopoSample> topological_field(const CriticalityData& data,
                                          const std::vector<Vec2>& points) {
  const Mesh& mesh = *data.mesh;
  const double clearance = 2.0 * mesh.max_edge();
  std::vector<TopoSample> out;
  out.reserve(points.size());
  for (const Vec2& p : points) {
    if (dist(p, data.max_point.x0) < clearance)
      throw std::invalid_argument("topological_field: sample point too close to the torsion maximum");
    if (boundary_distance(mesh, p) < clearance)
      throw std::invalid_argument("topological_field: sample point too close to the boundary");
    const double uv = eval_field(mesh, data.u, p);
    const double pv = eval_field(mesh, data.eigen.phi, p);
    const double gv = green_value(data, p);
    out.push_back({p, data.M * pv * pv - data.lambda1 * uv * gv});
  }
  return out;
}

}  // namespace tlab
