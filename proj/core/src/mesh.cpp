#include "tlab/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace tlab {

namespace {

std::uint64_t ukey(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

double tri_area(const Mesh& m, const std::array<int, 3>& t) {
  const Vec2 a = m.nodes[t[0]], b = m.nodes[t[1]], c = m.nodes[t[2]];
  return 0.5 * cross(b - a, c - a);
}

}  // namespace

double Mesh::area() const {
  double s = 0.0;
  for (const auto& t : tris) s += tri_area(*this, t);
  return s;
}

double Mesh::min_angle_deg() const {
  double worst = 180.0;
  for (const auto& t : tris) {
    for (int i = 0; i < 3; ++i) {
      const Vec2 p = nodes[t[i]];
      const Vec2 u = nodes[t[(i + 1) % 3]] - p;
      const Vec2 v = nodes[t[(i + 2) % 3]] - p;
      const double c = dot(u, v) / std::sqrt(dot(u, u) * dot(v, v));
      worst = std::min(worst, std::acos(std::clamp(c, -1.0, 1.0)) * 180.0 / kPi);
    }
  }
  return worst;
}

double Mesh::max_edge() const {
  double h = 0.0;
  for (const auto& t : tris)
    for (int i = 0; i < 3; ++i) h = std::max(h, dist(nodes[t[i]], nodes[t[(i + 1) % 3]]));
  return h;
}

std::vector<int> Mesh::boundary_nodes() const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(nodes.size()); ++i)
    if (on_boundary[i]) out.push_back(i);
  return out;
}

Mesh Mesh::scaled(double t) const {
  Mesh m = *this;
  for (Vec2& p : m.nodes) p = t * p;
  for (Loop& loop : m.loops) {
    for (Vec2& p : loop.pts) p = t * p;
    loop.center = t * loop.center;
    loop.rx *= t;
    loop.ry *= t;
  }
  return m;
}

Mesh refine(const Mesh& mesh) {
  Mesh out;
  out.label = mesh.label;
  out.loops = mesh.loops;
  out.nodes = mesh.nodes;
  out.on_boundary = mesh.on_boundary;

  std::unordered_map<std::uint64_t, int> bloop;
  bloop.reserve(mesh.bedges.size());
  for (std::size_t i = 0; i < mesh.bedges.size(); ++i)
    bloop[ukey(mesh.bedges[i][0], mesh.bedges[i][1])] = mesh.bedge_loop[i];

  std::unordered_map<std::uint64_t, int> midpoint;
  midpoint.reserve(mesh.tris.size() * 2);
  auto mid_of = [&](int a, int b) {
    const std::uint64_t k = ukey(a, b);
    const auto it = midpoint.find(k);
    if (it != midpoint.end()) return it->second;
    Vec2 m = 0.5 * (mesh.nodes[a] + mesh.nodes[b]);
    bool boundary = false;
    const auto bit = bloop.find(k);
    if (bit != bloop.end()) {
      m = loop_snapped_midpoint(mesh.loops[bit->second], mesh.nodes[a], mesh.nodes[b]);
      boundary = true;
    }
    const int idx = static_cast<int>(out.nodes.size());
    out.nodes.push_back(m);
    out.on_boundary.push_back(boundary ? 1 : 0);
    midpoint.emplace(k, idx);
    return idx;
  };

  out.tris.reserve(mesh.tris.size() * 4);
  for (const auto& t : mesh.tris) {
    const int m01 = mid_of(t[0], t[1]);
    const int m12 = mid_of(t[1], t[2]);
    const int m20 = mid_of(t[2], t[0]);
    out.tris.push_back({t[0], m01, m20});
    out.tris.push_back({t[1], m12, m01});
    out.tris.push_back({t[2], m20, m12});
    out.tris.push_back({m01, m12, m20});
  }

  out.bedges.reserve(mesh.bedges.size() * 2);
  out.bedge_loop.reserve(mesh.bedges.size() * 2);
  for (std::size_t i = 0; i < mesh.bedges.size(); ++i) {
    const int a = mesh.bedges[i][0], b = mesh.bedges[i][1];
    const int m = mid_of(a, b);
    out.bedges.push_back({a, m});
    out.bedge_loop.push_back(mesh.bedge_loop[i]);
    out.bedges.push_back({m, b});
    out.bedge_loop.push_back(mesh.bedge_loop[i]);
  }
  return out;
}

MeshQuality mesh_quality(const Mesh& mesh) {
  MeshQuality q;
  q.n_nodes = static_cast<int>(mesh.nodes.size());
  q.n_tris = static_cast<int>(mesh.tris.size());
  q.n_bedges = static_cast<int>(mesh.bedges.size());
  q.min_angle_deg = mesh.min_angle_deg();
  q.max_edge = mesh.max_edge();
  q.area = mesh.area();

  std::unordered_set<std::uint64_t> edges;
  edges.reserve(mesh.tris.size() * 2);
  for (const auto& t : mesh.tris)
    for (int i = 0; i < 3; ++i) edges.insert(ukey(t[i], t[(i + 1) % 3]));
  const auto e = static_cast<long long>(edges.size());
  const auto b = static_cast<long long>(mesh.bedges.size());
  const auto t3 = 3LL * q.n_tris;
  q.euler_ok = (t3 == 2 * (e - b) + b);
  for (const auto& t : mesh.tris)
    if (tri_area(mesh, t) <= 0.0) q.euler_ok = false;
  return q;
}

void write_mesh_text(const Mesh& mesh, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
  char buf[80];
  os << mesh.nodes.size() << "\n";
  for (const Vec2& p : mesh.nodes) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", p.x, p.y);
    os << buf;
  }
  os << mesh.tris.size() << "\n";
  for (const auto& t : mesh.tris) os << t[0] << " " << t[1] << " " << t[2] << "\n";
  os << mesh.bedges.size() << "\n";
  for (std::size_t i = 0; i < mesh.bedges.size(); ++i)
    os << mesh.bedges[i][0] << " " << mesh.bedges[i][1] << " " << mesh.bedge_loop[i] << "\n";
}

}  // namespace tlab
