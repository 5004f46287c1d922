#pragma once

#include <array>
#include <string>
#include <vector>

#include "tlab/geometry.hpp"

namespace tlab {

struct MeshParams {
  double h_target = 0.05;     // target boundary/interior edge length
  double min_angle_deg = 20;  // quality floor for refinement
};

// Piecewise-linear triangle mesh. Triangles are counter-clockwise; boundary
// edges are oriented with the domain on their left, so the outward normal of
// edge (a,b) is (b-a) rotated by -90 degrees.
struct Mesh {
  std::vector<Vec2> nodes;
  std::vector<std::array<int, 3>> tris;
  std::vector<std::array<int, 2>> bedges;
  std::vector<int> bedge_loop;  // index into `loops` for each boundary edge
  std::vector<char> on_boundary;
  std::vector<Loop> loops;  // geometry the boundary came from (for snapping)
  std::string label;

  double area() const;
  double min_angle_deg() const;
  double max_edge() const;
  std::vector<int> boundary_nodes() const;  // sorted, unique
  Mesh scaled(double t) const;
};

Mesh triangulate(const Domain& domain, const MeshParams& params);

// Uniform 4-way split; midpoints of boundary edges are snapped onto the
// analytic curve their loop carries (circles radially, ellipses in parameter).
Mesh refine(const Mesh& mesh);

struct MeshQuality {
  int n_nodes = 0;
  int n_tris = 0;
  int n_bedges = 0;
  double min_angle_deg = 0;
  double max_edge = 0;
  double area = 0;
  bool euler_ok = false;  // V - E + T == 1 - holes per component, checked via edge counts
};

MeshQuality mesh_quality(const Mesh& mesh);

void write_mesh_text(const Mesh& mesh, const std::string& path);

}  // namespace tlab
