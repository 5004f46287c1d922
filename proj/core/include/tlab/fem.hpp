#pragma once

#include <string>
#include <vector>

#include "tlab/mesh.hpp"

namespace tlab {

// Vertex-indexed P1 coefficients tied to one mesh.
struct ScalarField {
  const Mesh* mesh = nullptr;
  std::vector<double> values;
  std::string kind;  // torsion | screened | eigenfunction | green_regular_part
};

struct EigenSolution {
  ScalarField phi;  // L2-normalized, positive at its maximum
  double lambda = 0.0;
  int iterations = 0;
};

// First factor of the splitting  phi_x0 = -(1/2pi) log|x - x0| + w:
// `w` carries the regular part including its boundary values.
struct GreenSolution {
  ScalarField w;
  Vec2 x0;
};

// Per-boundary-edge outward normal derivative, averaged over the edge.
struct BoundaryField {
  const Mesh* mesh = nullptr;
  std::vector<double> edge_value;  // parallel to mesh.bedges
};

// Describes the equation a field satisfies, so flux recovery can form the
// consistent residual: bilinear form grad-grad + screen * mass, right-hand
// side rhs_const + eigen_lambda * field.
struct FluxSource {
  double rhs_const = 0.0;
  double eigen_lambda = 0.0;
  double screen = 0.0;
  static FluxSource torsion() { return {1.0, 0.0, 0.0}; }
  static FluxSource screened(double a) { return {1.0, 0.0, a}; }
  static FluxSource eigenfunction(double lambda) { return {0.0, lambda, 0.0}; }
  static FluxSource harmonic() { return {0.0, 0.0, 0.0}; }
};

ScalarField solve_torsion(const Mesh& mesh);
ScalarField solve_screened(const Mesh& mesh, double a);
EigenSolution solve_eigenpair(const Mesh& mesh);
GreenSolution solve_green(const Mesh& mesh, Vec2 x0);

BoundaryField boundary_flux(const Mesh& mesh, const ScalarField& field, const FluxSource& source);

// Flux of the full Green function: exact per-edge subtended-angle flux of the
// log part plus recovered flux of the regular part. Sums to -1 over the
// boundary by construction.
BoundaryField green_boundary_flux(const Mesh& mesh, const GreenSolution& green);

double integrate(const Mesh& mesh, const ScalarField& field);
double max_vertex_value(const ScalarField& field);
int interior_vertex_count(const Mesh& mesh);

// Piecewise-constant gradient per triangle.
std::vector<Vec2> triangle_gradients(const Mesh& mesh, const ScalarField& field);

// P1 interpolation at an arbitrary point (the containing triangle is found by
// brute force; meant for probing, not for inner loops).
double eval_field(const Mesh& mesh, const ScalarField& field, Vec2 p);

}  // namespace tlab
