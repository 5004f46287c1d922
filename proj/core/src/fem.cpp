#include "tlab/fem.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace tlab {

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

struct System {
  SpMat K;  // grad-grad, all vertices
  SpMat M;  // consistent mass, all vertices
  std::vector<int> interior;      // interior vertex ids
  std::vector<int> to_interior;   // vertex id -> interior index or -1
};

System assemble(const Mesh& mesh) {
  const int n = static_cast<int>(mesh.nodes.size());
  System sys;
  sys.K.resize(n, n);
  sys.M.resize(n, n);
  std::vector<Triplet> tk, tm;
  tk.reserve(mesh.tris.size() * 9);
  tm.reserve(mesh.tris.size() * 9);
  for (const auto& t : mesh.tris) {
    const Vec2 a = mesh.nodes[t[0]], b = mesh.nodes[t[1]], c = mesh.nodes[t[2]];
    const double area2 = cross(b - a, c - a);
    if (area2 <= 0.0) throw std::invalid_argument("mesh has a non-positive triangle");
    const double area = 0.5 * area2;
    // gradients of the barycentric hats
    const Vec2 g[3] = {{(b.y - c.y) / area2, (c.x - b.x) / area2},
                       {(c.y - a.y) / area2, (a.x - c.x) / area2},
                       {(a.y - b.y) / area2, (b.x - a.x) / area2}};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        tk.emplace_back(t[i], t[j], area * dot(g[i], g[j]));
        tm.emplace_back(t[i], t[j], area * (i == j ? 1.0 / 6.0 : 1.0 / 12.0));
      }
  }
  sys.K.setFromTriplets(tk.begin(), tk.end());
  sys.M.setFromTriplets(tm.begin(), tm.end());
  sys.to_interior.assign(n, -1);
  for (int i = 0; i < n; ++i)
    if (!mesh.on_boundary[i]) {
      sys.to_interior[i] = static_cast<int>(sys.interior.size());
      sys.interior.push_back(i);
    }
  return sys;
}

SpMat restrict_interior(const SpMat& A, const System& sys) {
  const int m = static_cast<int>(sys.interior.size());
  std::vector<Triplet> tr;
  tr.reserve(A.nonZeros());
  for (int col = 0; col < A.outerSize(); ++col) {
    const int jc = sys.to_interior[col];
    if (jc < 0) continue;
    for (SpMat::InnerIterator it(A, col); it; ++it) {
      const int ir = sys.to_interior[static_cast<int>(it.row())];
      if (ir >= 0) tr.emplace_back(ir, jc, it.value());
    }
  }
  SpMat out(m, m);
  out.setFromTriplets(tr.begin(), tr.end());
  return out;
}

ScalarField solve_reaction_diffusion(const Mesh& mesh, double a, const char* kind) {
  if (a < 0) throw std::invalid_argument("screening coefficient must be nonnegative");
  const System sys = assemble(mesh);
  const int m = static_cast<int>(sys.interior.size());
  if (m == 0) throw std::invalid_argument("mesh too coarse: no interior vertices");
  SpMat A = sys.K;
  if (a > 0) A += a * sys.M;
  const SpMat Ai = restrict_interior(A, sys);
  // consistent load for f = 1:  (M 1)_i restricted to interior rows
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(mesh.nodes.size());
  Eigen::VectorXd load_full = sys.M * ones;
  Eigen::VectorXd rhs(m);
  for (int i = 0; i < m; ++i) rhs[i] = load_full[sys.interior[i]];

  Eigen::SimplicialLDLT<SpMat> solver(Ai);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("factorization failed for the reaction-diffusion system");
  const Eigen::VectorXd ui = solver.solve(rhs);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("linear solve failed for the reaction-diffusion system");

  ScalarField f;
  f.mesh = &mesh;
  f.kind = kind;
  f.values.assign(mesh.nodes.size(), 0.0);
  for (int i = 0; i < m; ++i) f.values[sys.interior[i]] = ui[i];
  return f;
}

}  // namespace

ScalarField solve_torsion(const Mesh& mesh) { return solve_reaction_diffusion(mesh, 0.0, "torsion"); }

ScalarField solve_screened(const Mesh& mesh, double a) {
  return solve_reaction_diffusion(mesh, a, a == 0.0 ? "torsion" : "screened");
}

EigenSolution solve_eigenpair(const Mesh& mesh) {
  const System sys = assemble(mesh);
  const int m = static_cast<int>(sys.interior.size());
  if (m == 0) throw std::invalid_argument("mesh too coarse: no interior vertices");
  const SpMat Ki = restrict_interior(sys.K, sys);
  const SpMat Mi = restrict_interior(sys.M, sys);
  Eigen::SimplicialLDLT<SpMat> solver(Ki);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("stiffness factorization failed for the eigenproblem");

  // Plain inverse iteration converges like lambda1/lambda2 per step, which is
  // hopeless on long thin domains where the low spectrum clusters. A few
  // purifying steps to seed the Rayleigh quotient, then shifted iterations
  // with occasional refactorization converge in a handful of solves. The
  // ground state is the only sign-definite eigenvector, which gives a cheap
  // safeguard against locking onto a higher mode.
  Eigen::VectorXd y = Eigen::VectorXd::Ones(m);
  y /= std::sqrt(y.dot(Mi * y));
  double lambda = y.dot(Ki * y);
  int it = 0;
  for (; it < 6; ++it) {
    Eigen::VectorXd z = solver.solve(Mi * y);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigen iteration solve failed");
    z /= std::sqrt(z.dot(Mi * z));
    lambda = z.dot(Ki * z);
    y.swap(z);
  }

  // Shifted iteration: refactorize when the Rayleigh quotient drifts away
  // from the current shift. Returns true once the relative residual is tiny.
  const auto iterate = [&](double shift, bool track_shift, int rounds) {
    Eigen::SimplicialLDLT<SpMat> sh;
    sh.compute(SpMat(Ki - shift * Mi));
    if (sh.info() != Eigen::Success) return false;
    for (int round = 0; round < rounds; ++round) {
      if (track_shift && std::abs(lambda - shift) > 1e-3 * lambda) {
        shift = lambda * (1.0 - 1e-6);
        sh.compute(SpMat(Ki - shift * Mi));
        if (sh.info() != Eigen::Success) return false;
      }
      Eigen::VectorXd z = sh.solve(Mi * y);
      if (sh.info() != Eigen::Success) return false;
      const double zn = std::sqrt(z.dot(Mi * z));
      if (!std::isfinite(zn) || zn == 0.0) return false;
      z /= zn;
      const Eigen::VectorXd Mz = Mi * z;
      lambda = z.dot(Ki * z);
      const double res = (Ki * z - lambda * Mz).norm() / (lambda * Mz.norm());
      y.swap(z);
      ++it;
      if (res <= 1e-9) return true;
    }
    return false;
  };

  // The ground state is the only sign-definite eigenvector, which gives a
  // cheap check that the iteration did not lock onto a higher mode. Flips y
  // so its dominant sign is positive.
  const auto sign_definite = [&](Eigen::VectorXd& v) {
    double pos = 0.0, neg = 0.0;
    for (int i = 0; i < m; ++i) {
      pos = std::max(pos, v[i]);
      neg = std::min(neg, v[i]);
    }
    if (pos < -neg) {
      v = -v;
      const double t = pos;
      pos = -neg;
      neg = -t;
    }
    return -neg <= 1e-2 * pos;
  };

  // Number of eigenvalues below s, by Sylvester inertia of K - s M.
  const auto count_below = [&](double s) -> int {
    Eigen::SimplicialLDLT<SpMat> f;
    f.compute(SpMat(Ki - s * Mi));
    if (f.info() != Eigen::Success) return -1;  // s hit an eigenvalue
    int c = 0;
    const auto& d = f.vectorD();
    for (int i = 0; i < d.size(); ++i)
      if (d[i] < 0.0) ++c;
    return c;
  };

  bool converged = iterate(lambda * (1.0 - 1e-6), true, 30) && sign_definite(y);

  // On long thin domains the low spectrum clusters and the Rayleigh shift can
  // land above several modes, so the fast path converges to the wrong one.
  // Bracket the smallest eigenvalue by inertia bisection and iterate from a
  // shift that provably sits below it, restarting from the positive part of
  // the last iterate.
  for (int attempt = 0; attempt < 3 && !converged; ++attempt) {
    for (int i = 0; i < m; ++i) y[i] = std::max(y[i], 0.0);
    double yn = std::sqrt(y.dot(Mi * y));
    if (!(yn > 0.0) || !std::isfinite(yn)) {
      y = Eigen::VectorXd::Ones(m);
      yn = std::sqrt(y.dot(Mi * y));
    }
    y /= yn;
    for (int k = 0; k < 4; ++k) {
      Eigen::VectorXd z = solver.solve(Mi * y);
      z /= std::sqrt(z.dot(Mi * z));
      y.swap(z);
      ++it;
    }
    lambda = y.dot(Ki * y);

    double lo = 0.0, hi = lambda * (1.0 + 1e-12);
    for (int g = 0; g < 8 && count_below(hi) == 0; ++g) hi *= 1.0 + 1e-3;
    for (const double width : {1e-3, 1e-6, 1e-9}) {
      int guard = 0;
      while (hi - lo > width * hi && ++guard <= 80) {
        double mid = 0.5 * (lo + hi);
        int c = count_below(mid);
        if (c < 0) {
          mid = std::nextafter(mid, hi);
          c = count_below(mid);
          if (c < 0) break;
        }
        (c == 0 ? lo : hi) = mid;
      }
      if (iterate(lo, false, 12) && sign_definite(y)) {
        converged = true;
        break;
      }
    }
  }
  if (!converged)
    throw std::runtime_error("eigenvalue iteration did not converge");

  EigenSolution out;
  out.lambda = lambda;
  out.iterations = it;
  out.phi.mesh = &mesh;
  out.phi.kind = "eigenfunction";
  out.phi.values.assign(mesh.nodes.size(), 0.0);
  for (int i = 0; i < m; ++i) out.phi.values[sys.interior[i]] = y[i];
  double extreme = 0.0;
  for (const double v : out.phi.values)
    if (std::abs(v) > std::abs(extreme)) extreme = v;
  if (extreme < 0)
    for (double& v : out.phi.values) v = -v;
  return out;
}

GreenSolution solve_green(const Mesh& mesh, Vec2 x0) {
  // x0 must be strictly interior
  bool inside = false;
  for (const auto& t : mesh.tris) {
    const Vec2 a = mesh.nodes[t[0]], b = mesh.nodes[t[1]], c = mesh.nodes[t[2]];
    if (cross(b - a, x0 - a) >= 0 && cross(c - b, x0 - b) >= 0 && cross(a - c, x0 - c) >= 0) {
      inside = true;
      break;
    }
  }
  if (!inside) throw std::invalid_argument("green source point is not inside the mesh");

  const System sys = assemble(mesh);
  const int m = static_cast<int>(sys.interior.size());
  if (m == 0) throw std::invalid_argument("mesh too coarse: no interior vertices");
  const SpMat Ki = restrict_interior(sys.K, sys);

  // w harmonic with boundary trace +(1/2pi) log|x - x0|
  Eigen::VectorXd wfull = Eigen::VectorXd::Zero(mesh.nodes.size());
  for (int i = 0; i < static_cast<int>(mesh.nodes.size()); ++i) {
    if (!mesh.on_boundary[i]) continue;
    const double r = dist(mesh.nodes[i], x0);
    if (r <= 0) throw std::invalid_argument("green source point hits the boundary");
    wfull[i] = std::log(r) / (2.0 * kPi);
  }
  Eigen::VectorXd rhs_full = -(sys.K * wfull);
  Eigen::VectorXd rhs(m);
  for (int i = 0; i < m; ++i) rhs[i] = rhs_full[sys.interior[i]];
  Eigen::SimplicialLDLT<SpMat> solver(Ki);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("factorization failed for the harmonic extension");
  const Eigen::VectorXd wi = solver.solve(rhs);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("harmonic extension solve failed");

  GreenSolution out;
  out.x0 = x0;
  out.w.mesh = &mesh;
  out.w.kind = "green_regular_part";
  out.w.values.assign(wfull.data(), wfull.data() + wfull.size());
  for (int i = 0; i < m; ++i) out.w.values[sys.interior[i]] = wi[i];
  return out;
}

namespace {

void check_owner(const Mesh& mesh, const ScalarField& field) {
  if (field.mesh != &mesh || field.values.size() != mesh.nodes.size())
    throw std::invalid_argument("field does not belong to this mesh");
}

}  // namespace

BoundaryField boundary_flux(const Mesh& mesh, const ScalarField& field, const FluxSource& source) {
  check_owner(mesh, field);
  const System sys = assemble(mesh);
  const Eigen::Map<const Eigen::VectorXd> u(field.values.data(), field.values.size());

  Eigen::VectorXd residual = sys.K * u;
  if (source.screen != 0.0) residual += source.screen * (sys.M * u);
  if (source.rhs_const != 0.0)
    residual -= source.rhs_const * (sys.M * Eigen::VectorXd::Ones(mesh.nodes.size()));
  if (source.eigen_lambda != 0.0) residual -= source.eigen_lambda * (sys.M * u);

  // one cyclic consistent-mass solve per boundary loop: M_loop q = residual
  const int n = static_cast<int>(mesh.nodes.size());
  std::vector<double> q(n, 0.0);
  std::unordered_map<int, std::vector<int>> edges_of_loop;
  for (int e = 0; e < static_cast<int>(mesh.bedges.size()); ++e)
    edges_of_loop[mesh.bedge_loop[e]].push_back(e);

  for (auto& [loop_id, edges] : edges_of_loop) {
    std::vector<int> verts;
    std::unordered_map<int, int> local;
    for (const int e : edges)
      for (const int v : mesh.bedges[e])
        if (!local.count(v)) {
          local[v] = static_cast<int>(verts.size());
          verts.push_back(v);
        }
    const int nl = static_cast<int>(verts.size());
    std::vector<Triplet> tm;
    tm.reserve(edges.size() * 4);
    for (const int e : edges) {
      const int a = local[mesh.bedges[e][0]], b = local[mesh.bedges[e][1]];
      const double len = dist(mesh.nodes[mesh.bedges[e][0]], mesh.nodes[mesh.bedges[e][1]]);
      tm.emplace_back(a, a, len / 3.0);
      tm.emplace_back(b, b, len / 3.0);
      tm.emplace_back(a, b, len / 6.0);
      tm.emplace_back(b, a, len / 6.0);
    }
    SpMat Ml(nl, nl);
    Ml.setFromTriplets(tm.begin(), tm.end());
    Eigen::VectorXd r(nl);
    for (int i = 0; i < nl; ++i) r[i] = residual[verts[i]];
    Eigen::SimplicialLDLT<SpMat> solver(Ml);
    if (solver.info() != Eigen::Success)
      throw std::runtime_error("boundary mass factorization failed");
    const Eigen::VectorXd ql = solver.solve(r);
    for (int i = 0; i < nl; ++i) q[verts[i]] = ql[i];
  }

  BoundaryField out;
  out.mesh = &mesh;
  out.edge_value.resize(mesh.bedges.size());
  for (int e = 0; e < static_cast<int>(mesh.bedges.size()); ++e)
    out.edge_value[e] = 0.5 * (q[mesh.bedges[e][0]] + q[mesh.bedges[e][1]]);
  return out;
}

BoundaryField green_boundary_flux(const Mesh& mesh, const GreenSolution& green) {
  BoundaryField out = boundary_flux(mesh, green.w, FluxSource::harmonic());
  for (int e = 0; e < static_cast<int>(mesh.bedges.size()); ++e) {
    const Vec2 a = mesh.nodes[mesh.bedges[e][0]] - green.x0;
    const Vec2 b = mesh.nodes[mesh.bedges[e][1]] - green.x0;
    double dtheta = std::atan2(b.y, b.x) - std::atan2(a.y, a.x);
    while (dtheta > kPi) dtheta -= 2.0 * kPi;
    while (dtheta < -kPi) dtheta += 2.0 * kPi;
    const double len = dist(mesh.nodes[mesh.bedges[e][0]], mesh.nodes[mesh.bedges[e][1]]);
    out.edge_value[e] += -dtheta / (2.0 * kPi * len);
  }
  return out;
}

double integrate(const Mesh& mesh, const ScalarField& field) {
  check_owner(mesh, field);
  double s = 0.0;
  for (const auto& t : mesh.tris) {
    const Vec2 a = mesh.nodes[t[0]], b = mesh.nodes[t[1]], c = mesh.nodes[t[2]];
    const double area = 0.5 * cross(b - a, c - a);
    s += area * (field.values[t[0]] + field.values[t[1]] + field.values[t[2]]) / 3.0;
  }
  return s;
}

double max_vertex_value(const ScalarField& field) {
  double m = -std::numeric_limits<double>::max();
  for (const double v : field.values) m = std::max(m, v);
  return m;
}

int interior_vertex_count(const Mesh& mesh) {
  int n = 0;
  for (const char b : mesh.on_boundary)
    if (!b) ++n;
  return n;
}

std::vector<Vec2> triangle_gradients(const Mesh& mesh, const ScalarField& field) {
  check_owner(mesh, field);
  std::vector<Vec2> g(mesh.tris.size());
  for (std::size_t i = 0; i < mesh.tris.size(); ++i) {
    const auto& t = mesh.tris[i];
    const Vec2 a = mesh.nodes[t[0]], b = mesh.nodes[t[1]], c = mesh.nodes[t[2]];
    const double area2 = cross(b - a, c - a);
    const double u0 = field.values[t[0]], u1 = field.values[t[1]], u2 = field.values[t[2]];
    g[i] = {(u0 * (b.y - c.y) + u1 * (c.y - a.y) + u2 * (a.y - b.y)) / area2,
            (u0 * (c.x - b.x) + u1 * (a.x - c.x) + u2 * (b.x - a.x)) / area2};
  }
  return g;
}

double eval_field(const Mesh& mesh, const ScalarField& field, Vec2 p) {
  check_owner(mesh, field);
  for (const auto& t : mesh.tris) {
    const Vec2 a = mesh.nodes[t[0]], b = mesh.nodes[t[1]], c = mesh.nodes[t[2]];
    const double area2 = cross(b - a, c - a);
    const double w0 = cross(b - p, c - p);
    const double w1 = cross(c - p, a - p);
    const double w2 = cross(a - p, b - p);
    const double tol = -1e-12 * area2;
    if (w0 >= tol && w1 >= tol && w2 >= tol)
      return (w0 * field.values[t[0]] + w1 * field.values[t[1]] + w2 * field.values[t[2]]) / area2;
  }
  throw std::invalid_argument("evaluation point lies outside the mesh");
}

}  // namespace tlab
