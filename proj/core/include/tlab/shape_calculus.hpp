#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "tlab/fem.hpp"

namespace tlab {

struct MaxPoint {
  Vec2 x0{0, 0};
  double M_refined = 0;
  std::array<double, 3> hessian{0, 0, 0};  // (xx, xy, yy) of the local quadratic fit
  bool unique = true;
  std::vector<Vec2> other_maxima;  // remaining local maxima on non-convex domains
};

MaxPoint locate_max(const Mesh& mesh, const ScalarField& torsion);

// Velocity field for shape differentiation: analytic components, evaluated
// wherever the boundary integral needs them.
struct ShapeVelocity {
  std::string name;
  std::function<Vec2(Vec2)> V;
  static ShapeVelocity translation_x() { return {"translate-x", [](Vec2) { return Vec2{1, 0}; }}; }
  static ShapeVelocity translation_y() { return {"translate-y", [](Vec2) { return Vec2{0, 1}; }}; }
  static ShapeVelocity dilation() { return {"dilate", [](Vec2 p) { return p; }}; }
  static ShapeVelocity squeeze() { return {"squeeze", [](Vec2 p) { return Vec2{p.x, -p.y}; }}; }
};

// Everything the optimality analysis needs on one mesh hierarchy: solved
// fields, recovered fluxes, located maximum and the scalars M, lambda1.
// The mesh sits behind a shared_ptr so the fields' back-pointers survive
// moves of the aggregate.
struct CriticalityData {
  std::shared_ptr<const Mesh> mesh;
  ScalarField u;
  EigenSolution eigen;
  GreenSolution green;
  BoundaryField flux_u;      // torsion flux
  BoundaryField flux_phi;    // eigenfunction flux
  BoundaryField flux_green;  // full Green-function flux
  MaxPoint max_point;
  double M = 0;
  double lambda1 = 0;
  double perimeter = 0;
};

CriticalityData criticality_data(const Domain& domain, double h, int refinements);

// rho = lambda1 * (du/dn)(dphi_x0/dn) - M (dphi/dn)^2 per boundary edge.
BoundaryField optimality_residual(const CriticalityData& data);
BoundaryField optimality_residual(const Domain& domain, double h, int refinements = 1);

struct DerivativeReport {
  double G_prime = 0;
  double M_prime = 0;
  double lambda1_prime = 0;
  double M = 0, lambda1 = 0, G = 0;
  bool beyond_hypotheses = false;  // formula evaluated on a non-convex domain
};

DerivativeReport shape_derivative(const CriticalityData& data, const ShapeVelocity& V,
                                  bool domain_convex);
DerivativeReport shape_derivative(const Domain& domain, const ShapeVelocity& V, double h,
                                  int refinements = 1);

// R(x) = M phi(x)^2 - lambda1 u(x) phi_x0(x), with phi_x0 evaluated through
// the log/regular splitting of the Green function at the torsion maximum.
struct TopoSample {
  Vec2 x{0, 0};
  double R = 0;
};

std::vector<TopoSample> topological_field(const CriticalityData& data,
                                          const std::vector<Vec2>& points);

// phi_x0(x) from the splitting; used for the Green-symmetry cross-check.
double green_value(const CriticalityData& data, Vec2 x);

}  // namespace tlab
