#include "tlab/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tlab/functionals.hpp"
#include "tlab/shape_calculus.hpp"

namespace tlab {

namespace {

// Convexify, drop collapsed vertices, rescale to unit area about the centroid.
std::vector<Vec2> normalize_polygon(std::vector<Vec2> verts) {
  verts = convex_project(verts);
  double diam = 0.0;
  for (size_t i = 0; i < verts.size(); ++i)
    for (size_t j = i + 1; j < verts.size(); ++j) diam = std::max(diam, dist(verts[i], verts[j]));
  std::vector<Vec2> clean;
  for (const Vec2& v : verts)
    if (clean.empty() || dist(clean.back(), v) > 1e-9 * diam) clean.push_back(v);
  while (clean.size() > 1 && dist(clean.front(), clean.back()) <= 1e-9 * diam) clean.pop_back();
  if (clean.size() < 3) throw std::runtime_error("optimizer: polygon collapsed");

  const double area = polygon_signed_area(clean);
  if (!(area > 0.0)) throw std::runtime_error("optimizer: polygon lost orientation");
  const Vec2 c = polygon_centroid(clean);
  const double s = 1.0 / std::sqrt(area);
  for (Vec2& v : clean) v = c + s * (v - c);
  return clean;
}

Domain polygon_domain(const std::vector<Vec2>& verts) {
  return build_domain(DomainSpec::polygon(verts, "iterate"));
}

// Internal objective: non-extrapolated G on the finest level, consistent
// across candidates so the line search compares like with like.
double objective(const std::vector<Vec2>& verts, const OptimizerParams& p) {
  const Domain dom = polygon_domain(verts);
  Mesh mesh = triangulate(dom, MeshParams{p.h, 20.0});
  for (int i = 1; i < p.levels; ++i) mesh = refine(mesh);
  const ScalarField u = solve_torsion(mesh);
  const EigenSolution eig = solve_eigenpair(mesh);
  const MaxPoint mp = locate_max(mesh, u);
  return mp.M_refined * eig.lambda;
}

// Vertex gradient of G: the optimality residual rho weighted by the hat
// function of each polygon vertex along its two incident edges.
std::vector<Vec2> vertex_gradient(const std::vector<Vec2>& verts, const OptimizerParams& p,
                                  double* G_out) {
  const Domain dom = polygon_domain(verts);
  const CriticalityData data = criticality_data(dom, p.h, p.levels - 1);
  if (G_out) *G_out = data.M * data.lambda1;

  const size_t n = verts.size();
  std::vector<Vec2> grad(n, Vec2{0.0, 0.0});
  const BoundaryField rho = optimality_residual(data);
  const Mesh& mesh = *data.mesh;
  for (size_t e = 0; e < mesh.bedges.size(); ++e) {
    const Vec2 a = mesh.nodes[mesh.bedges[e][0]];
    const Vec2 b = mesh.nodes[mesh.bedges[e][1]];
    const double L = dist(a, b);
    if (L <= 0.0) continue;
    const Vec2 mid = 0.5 * (a + b);

    // Which polygon edge carries this mesh edge?
    size_t k = 0;
    double best = std::numeric_limits<double>::infinity();
    double t_best = 0.0;
    for (size_t j = 0; j < n; ++j) {
      const Vec2 pa = verts[j], pb = verts[(j + 1) % n];
      const Vec2 d = pb - pa;
      const double len2 = dot(d, d);
      double t = len2 > 0.0 ? dot(mid - pa, d) / len2 : 0.0;
      t = std::clamp(t, 0.0, 1.0);
      const double dd = dist(mid, pa + t * d);
      if (dd < best) {
        best = dd;
        k = j;
        t_best = t;
      }
    }
    const Vec2 pa = verts[k], pb = verts[(k + 1) % n];
    const Vec2 d = pb - pa;
    const double len = norm(d);
    if (len <= 0.0) continue;
    const Vec2 nrm{d.y / len, -d.x / len};
    const double w = rho.edge_value[e] * L;
    grad[k] = grad[k] + (1.0 - t_best) * w * nrm;
    grad[(k + 1) % n] = grad[(k + 1) % n] + t_best * w * nrm;
  }
  return grad;
}

double grad_norm(const std::vector<Vec2>& g) {
  double s = 0.0;
  for (const Vec2& v : g) s += dot(v, v);
  return std::sqrt(s);
}

}  // namespace

OptimTrace maximize_G(const std::vector<Vec2>& seed, const OptimizerParams& params) {
  if (seed.size() < 3) throw std::invalid_argument("maximize_G: need at least three vertices");
  if (params.levels < 1) throw std::invalid_argument("maximize_G: levels must be >= 1");

  OptimTrace trace;
  std::vector<Vec2> cur = normalize_polygon(seed);

  double G_cur = 0.0;
  std::vector<Vec2> grad = vertex_gradient(cur, params, &G_cur);
  ++trace.evaluations;
  trace.iterates.push_back({cur, G_cur, grad_norm(grad), 0.0});

  double step = params.step0;
  if (step <= 0.0) {
    double diam = 0.0;
    for (size_t i = 0; i < cur.size(); ++i)
      for (size_t j = i + 1; j < cur.size(); ++j) diam = std::max(diam, dist(cur[i], cur[j]));
    double gmax = 0.0;
    for (const Vec2& g : grad) gmax = std::max(gmax, norm(g));
    step = gmax > 0.0 ? 0.02 * diam / gmax : 1.0;
  }

  trace.status = "max-iters";
  for (int iter = 0; iter < params.max_iters; ++iter) {
    const double gn = grad_norm(grad);
    if (gn <= params.grad_tol_rel * G_cur) {
      trace.status = "converged";
      break;
    }

    bool accepted = false;
    for (int half = 0; half < params.max_step_halvings; ++half) {
      std::vector<Vec2> cand;
      double G_cand = 0.0;
      try {
        std::vector<Vec2> moved = cur;
        for (size_t i = 0; i < moved.size(); ++i) moved[i] = moved[i] + step * grad[i];
        cand = normalize_polygon(moved);
        double predicted = 0.0;
        for (size_t i = 0; i < cur.size() && i < cand.size(); ++i)
          predicted += dot(grad[i], cand[i] - cur[i]);
        if (cand.size() != cur.size() || predicted <= 0.0) {
          step *= params.backtrack;
          continue;
        }
        G_cand = objective(cand, params);
        ++trace.evaluations;
        if (G_cand >= G_cur + params.armijo * predicted) {
          cur = std::move(cand);
          G_cur = G_cand;
          grad = vertex_gradient(cur, params, nullptr);
          ++trace.evaluations;
          trace.iterates.push_back({cur, G_cur, grad_norm(grad), step});
          step *= 2.0;
          accepted = true;
          break;
        }
      } catch (const std::exception&) {
        // degenerate candidate: treat like a failed Armijo test
      }
      step *= params.backtrack;
    }
    if (!accepted) {
      trace.status = "stalled";
      break;
    }
  }

  trace.best = cur;
  const FunctionalReport rep =
      functional_report(polygon_domain(cur), params.h, std::max(params.levels, 2));
  trace.best_G = rep.G;
  return trace;
}

}  // namespace tlab
