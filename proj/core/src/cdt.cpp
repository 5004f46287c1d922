#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tlab/mesh.hpp"

namespace tlab {

namespace {

using std::uint64_t;

double orient2d(Vec2 a, Vec2 b, Vec2 c) {
  const long double v = (static_cast<long double>(b.x) - a.x) * (static_cast<long double>(c.y) - a.y) -
                        (static_cast<long double>(b.y) - a.y) * (static_cast<long double>(c.x) - a.x);
  return static_cast<double>(v);
}

// > 0 when p lies strictly inside the circumcircle of CCW triangle (a,b,c)
long double incircle(Vec2 a, Vec2 b, Vec2 c, Vec2 p) {
  const long double ax = static_cast<long double>(a.x) - p.x;
  const long double ay = static_cast<long double>(a.y) - p.y;
  const long double bx = static_cast<long double>(b.x) - p.x;
  const long double by = static_cast<long double>(b.y) - p.y;
  const long double cx = static_cast<long double>(c.x) - p.x;
  const long double cy = static_cast<long double>(c.y) - p.y;
  return (ax * ax + ay * ay) * (bx * cy - by * cx) +
         (bx * bx + by * by) * (cx * ay - cy * ax) +
         (cx * cx + cy * cy) * (ax * by - ay * bx);
}

uint64_t ekey(int u, int v) {
  if (u > v) std::swap(u, v);
  return (static_cast<uint64_t>(static_cast<uint32_t>(u)) << 32) | static_cast<uint32_t>(v);
}

uint64_t dkey(int u, int v) {
  return (static_cast<uint64_t>(static_cast<uint32_t>(u)) << 32) | static_cast<uint32_t>(v);
}


struct Triangulator {
  struct Tri {
    std::array<int, 3> v;
    std::array<int, 3> adj;  // neighbour across edge (v[i], v[i+1])
    bool alive = true;
    bool inside = false;
  };

  const Domain* dom = nullptr;
  double h = 0.05;
  double cos_floor = 0.93969262078590838;  // cos(20 deg)

  std::vector<Vec2> pts;
  std::vector<char> onb;
  std::vector<Tri> tris;
  std::unordered_set<uint64_t> walls;
  std::unordered_map<uint64_t, int> wall_of;          // undirected edge -> loop id
  std::vector<std::array<int, 3>> wall_log;           // (u, v, loop) in creation order
  std::vector<int> stamp;
  int epoch = 0;
  int last_tri = 0;
  std::size_t point_budget = 6'000'000;

  // scratch for one insertion
  struct BEntry {
    int a, b, ext, ext_edge;
    bool inside;
  };
  std::vector<int> cav;
  std::vector<BEntry> entries;
  std::vector<int> fresh;  // triangles created by the last commit

  // ------------------------------------------------------------------ basics

  int add_vertex(Vec2 p, bool boundary) {
    if (pts.size() >= point_budget) throw std::runtime_error("triangulation exceeded its point budget");
    pts.push_back(p);
    onb.push_back(boundary ? 1 : 0);
    return static_cast<int>(pts.size()) - 1;
  }

  bool is_wall(int u, int v) const { return walls.count(ekey(u, v)) != 0; }

  // domain bbox extent; every absolute tolerance below is taken relative to
  // this so that scaling the input coordinates scales the whole construction
  double scale = 1.0;

  double tri_orient(const Tri& t, int e, Vec2 p) const {
    return orient2d(pts[t.v[e]], pts[t.v[(e + 1) % 3]], p);
  }

  long double incircle_eps(const Tri& t, Vec2 p) const {
    const Vec2 a = pts[t.v[0]], b = pts[t.v[1]], c = pts[t.v[2]];
    double m = scale;
    for (const Vec2 q : {a, b, c, p}) m = std::max({m, std::abs(q.x), std::abs(q.y)});
    return static_cast<long double>(1e-18) * m * m * m * m;
  }

  // ---------------------------------------------------------------- locating

  struct Located {
    int tri = -1;
    int wall_u = -1, wall_v = -1;  // set when the walk was stopped by a wall
  };

  Located locate(Vec2 p, int start, bool stop_at_walls) {
    int cur = (start >= 0 && start < static_cast<int>(tris.size()) && tris[start].alive) ? start : -1;
    if (cur < 0) {
      for (int i = static_cast<int>(tris.size()) - 1; i >= 0; --i)
        if (tris[i].alive) {
          cur = i;
          break;
        }
      if (cur < 0) throw std::logic_error("no live triangle to start the walk");
    }
    const std::size_t step_cap = 4 * tris.size() + 64;
    for (std::size_t step = 0; step < step_cap; ++step) {
      const Tri& t = tris[cur];
      int worst = -1;
      double worst_o = 0.0;
      for (int e = 0; e < 3; ++e) {
        const double o = tri_orient(t, e, p);
        if (o < worst_o) {
          worst_o = o;
          worst = e;
        }
      }
      if (worst < 0) return {cur, -1, -1};
      const int u = t.v[worst], v = t.v[(worst + 1) % 3];
      if (stop_at_walls && is_wall(u, v)) return {-1, u, v};
      const int nxt = t.adj[worst];
      if (nxt < 0) throw std::logic_error("walk left the triangulated region");
      cur = nxt;
    }
    // degenerate cycling: brute-force fallback
    for (int i = 0; i < static_cast<int>(tris.size()); ++i) {
      const Tri& t = tris[i];
      if (!t.alive) continue;
      if (tri_orient(t, 0, p) >= 0 && tri_orient(t, 1, p) >= 0 && tri_orient(t, 2, p) >= 0)
        return {i, -1, -1};
    }
    throw std::runtime_error("point location failed");
  }

  // ----------------------------------------------------------------- cavity

  void grow_cavity(Vec2 p, int t0) {
    ++epoch;
    stamp.resize(tris.size(), 0);
    cav.clear();
    cav.push_back(t0);
    stamp[t0] = epoch;
    for (std::size_t k = 0; k < cav.size(); ++k) {
      const Tri t = tris[cav[k]];
      for (int e = 0; e < 3; ++e) {
        const int n = t.adj[e];
        if (n < 0 || stamp[n] == epoch) continue;
        if (is_wall(t.v[e], t.v[(e + 1) % 3])) continue;  // never flood across a constraint
        const Tri& nt = tris[n];
        if (incircle(pts[nt.v[0]], pts[nt.v[1]], pts[nt.v[2]], p) >= -incircle_eps(nt, p)) {
          stamp[n] = epoch;
          cav.push_back(n);
        }
      }
    }
    // shrink until the cavity boundary is star-shaped around p
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t k = 0; k < cav.size(); ++k) {
        const int ti = cav[k];
        if (stamp[ti] != epoch) continue;
        const Tri& t = tris[ti];
        for (int e = 0; e < 3; ++e) {
          const int n = t.adj[e];
          const bool internal = n >= 0 && stamp[n] == epoch && !is_wall(t.v[e], t.v[(e + 1) % 3]);
          if (internal) continue;
          if (orient2d(pts[t.v[e]], pts[t.v[(e + 1) % 3]], p) <= 0.0) {
            if (ti == t0) throw std::runtime_error("degenerate insertion point");
            stamp[ti] = 0;
            changed = true;
            break;
          }
        }
      }
      if (changed) {
        std::vector<int> keep;
        keep.reserve(cav.size());
        for (int ti : cav)
          if (stamp[ti] == epoch) keep.push_back(ti);
        cav.swap(keep);
      }
    }
    entries.clear();
    for (int ti : cav) {
      const Tri& t = tris[ti];
      for (int e = 0; e < 3; ++e) {
        const int n = t.adj[e];
        const bool blocked = is_wall(t.v[e], t.v[(e + 1) % 3]);
        if (n >= 0 && stamp[n] == epoch && !blocked) continue;
        BEntry be;
        be.a = t.v[e];
        be.b = t.v[(e + 1) % 3];
        be.ext = (n >= 0 && stamp[n] != epoch) ? n : -1;
        be.ext_edge = -1;
        if (be.ext >= 0) {
          const Tri& x = tris[be.ext];
          for (int f = 0; f < 3; ++f)
            if (x.v[f] == be.b && x.v[(f + 1) % 3] == be.a) be.ext_edge = f;
        }
        be.inside = t.inside;
        entries.push_back(be);
      }
    }
  }

  int commit(Vec2 p, bool boundary) {
    const int np = add_vertex(p, boundary);
    for (int ti : cav) tris[ti].alive = false;
    fresh.clear();
    std::unordered_map<uint64_t, std::pair<int, int>> dmap;
    dmap.reserve(entries.size() * 3);
    const int base = static_cast<int>(tris.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const BEntry& be = entries[i];
      Tri nt;
      nt.v = {be.a, be.b, np};
      nt.adj = {-1, -1, -1};
      nt.inside = be.inside;
      const int ti = base + static_cast<int>(i);
      tris.push_back(nt);
      fresh.push_back(ti);
      dmap[dkey(be.a, be.b)] = {ti, 0};
      dmap[dkey(be.b, np)] = {ti, 1};
      dmap[dkey(np, be.a)] = {ti, 2};
    }
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const BEntry& be = entries[i];
      const int ti = base + static_cast<int>(i);
      Tri& t = tris[ti];
      for (int e = 0; e < 3; ++e) {
        if (t.adj[e] >= 0) continue;
        const int u = t.v[e], v = t.v[(e + 1) % 3];
        auto it = dmap.find(dkey(v, u));
        if (it != dmap.end()) {
          t.adj[e] = it->second.first;
          tris[it->second.first].adj[it->second.second] = ti;
        } else if (e == 0 && be.ext >= 0) {
          t.adj[0] = be.ext;
          tris[be.ext].adj[be.ext_edge] = ti;
        }
      }
    }
    stamp.resize(tris.size(), 0);
    last_tri = base;
    return np;
  }

  int insert_point(Vec2 p, bool boundary, int hint) {
    const Located loc = locate(p, hint, false);
    // refuse to duplicate an existing vertex
    const Tri& t = tris[loc.tri];
    for (int e = 0; e < 3; ++e)
      if (dist(pts[t.v[e]], p) < 1e-13 * scale) return t.v[e];
    grow_cavity(p, loc.tri);
    return commit(p, boundary);
  }

  // ------------------------------------------------------------------ phases

  void seed_super(double xmin, double xmax, double ymin, double ymax) {
    scale = std::max(xmax - xmin, ymax - ymin);
    const double cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax);
    const double r = 8.0 * scale;
    add_vertex({cx - 1.9 * r, cy - r}, false);
    add_vertex({cx + 1.9 * r, cy - r}, false);
    add_vertex({cx, cy + 1.9 * r}, false);
    Tri t;
    t.v = {0, 1, 2};
    t.adj = {-1, -1, -1};
    tris.push_back(t);
  }

  void add_wall(int u, int v, int loop) {
    walls.insert(ekey(u, v));
    wall_of[ekey(u, v)] = loop;
    wall_log.push_back({u, v, loop});
  }

  void drop_wall(int u, int v) {
    walls.erase(ekey(u, v));
    wall_of.erase(ekey(u, v));
  }

  std::vector<Vec2> sample_loop(const Loop& loop) const {
    std::vector<Vec2> out;
    if (loop.curve == CurveKind::Circle || loop.curve == CurveKind::Ellipse) {
      const std::size_t n0 = loop.pts.size();
      const std::size_t n = std::max(n0, static_cast<std::size_t>(std::ceil(loop.length() / h)));
      const double sgn = loop.signed_area() >= 0 ? 1.0 : -1.0;
      out.reserve(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double t = sgn * 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
        out.push_back({loop.center.x + loop.rx * std::cos(t), loop.center.y + loop.ry * std::sin(t)});
      }
      return out;
    }
    const std::size_t n = loop.pts.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 a = loop.pts[i], b = loop.pts[(i + 1) % n];
      const int k = std::max(1, static_cast<int>(std::ceil(dist(a, b) / h)));
      for (int j = 0; j < k; ++j) {
        const double s = static_cast<double>(j) / k;
        out.push_back({a.x + s * (b.x - a.x), a.y + s * (b.y - a.y)});
      }
    }
    return out;
  }

  std::vector<Vec2> boundary_samples;  // kept for the interior-seed clearance test

  void insert_loops() {
    for (std::size_t li = 0; li < dom->loops.size(); ++li) {
      const std::vector<Vec2> ring = sample_loop(dom->loops[li]);
      std::vector<int> ids;
      ids.reserve(ring.size());
      for (const Vec2& p : ring) {
        ids.push_back(insert_point(p, true, last_tri));
        boundary_samples.push_back(p);
      }
      for (std::size_t i = 0; i < ids.size(); ++i) {
        const int u = ids[i], v = ids[(i + 1) % ids.size()];
        if (u == v) throw std::runtime_error("boundary sampling collapsed an edge");
        add_wall(u, v, static_cast<int>(li));
      }
    }
  }

  std::unordered_set<uint64_t> live_edges() const {
    std::unordered_set<uint64_t> edges;
    edges.reserve(tris.size() * 2);
    for (const Tri& t : tris) {
      if (!t.alive) continue;
      for (int e = 0; e < 3; ++e) edges.insert(ekey(t.v[e], t.v[(e + 1) % 3]));
    }
    return edges;
  }

  void recover_walls() {
    for (int round = 0; round < 64; ++round) {
      const std::unordered_set<uint64_t> edges = live_edges();
      std::vector<std::array<int, 3>> missing;
      for (const auto& w : wall_log) {
        const uint64_t k = ekey(w[0], w[1]);
        if (!walls.count(k)) continue;  // superseded by a split
        if (!edges.count(k)) missing.push_back(w);
      }
      if (missing.empty()) return;
      for (const auto& w : missing) split_wall(w[0], w[1], true);
    }
    throw std::runtime_error("failed to recover a boundary segment");
  }

  // returns false when the wall was too short to split (caller drops the work item)
  bool split_wall(int u, int v, bool require) {
    const uint64_t k = ekey(u, v);
    const auto it = wall_of.find(k);
    if (it == wall_of.end()) return true;  // stale
    const int loop = it->second;
    const double len = dist(pts[u], pts[v]);
    if (len < 1e-3 * h) {
      if (require) throw std::runtime_error("boundary segment too short to split");
      return false;
    }
    const Vec2 m = loop_snapped_midpoint(dom->loops[loop], pts[u], pts[v]);
    drop_wall(u, v);
    const int np = insert_point(m, true, last_tri);
    if (np == u || np == v) throw std::runtime_error("boundary split produced a duplicate vertex");
    boundary_samples.push_back(m);
    add_wall(u, np, loop);
    add_wall(np, v, loop);
    return true;
  }

  void classify() {
    std::vector<signed char> side(tris.size(), -1);
    int start = -1;
    for (int i = 0; i < static_cast<int>(tris.size()); ++i)
      if (tris[i].alive && (tris[i].v[0] < 3 || tris[i].v[1] < 3 || tris[i].v[2] < 3)) {
        start = i;
        break;
      }
    if (start < 0) throw std::logic_error("no super-triangle region found");
    std::deque<int> queue{start};
    side[start] = 0;
    while (!queue.empty()) {
      const int ti = queue.front();
      queue.pop_front();
      const Tri& t = tris[ti];
      for (int e = 0; e < 3; ++e) {
        const int n = t.adj[e];
        if (n < 0 || !tris[n].alive) continue;
        const signed char s =
            static_cast<signed char>(side[ti] ^ (is_wall(t.v[e], t.v[(e + 1) % 3]) ? 1 : 0));
        if (side[n] == -1) {
          side[n] = s;
          queue.push_back(n);
        } else if (side[n] != s) {
          throw std::logic_error("inconsistent in/out classification (open boundary loop?)");
        }
      }
    }
    for (int i = 0; i < static_cast<int>(tris.size()); ++i) {
      if (!tris[i].alive) continue;
      if (side[i] == -1) throw std::logic_error("unreached triangle in classification");
      tris[i].inside = side[i] == 1;
      if (tris[i].inside && (tris[i].v[0] < 3 || tris[i].v[1] < 3 || tris[i].v[2] < 3))
        throw std::logic_error("super vertex inside the domain");
    }
  }

  void seed_interior(double xmin, double xmax, double ymin, double ymax) {
    // hash grid over boundary samples for the clearance test
    const double cell = h;
    std::unordered_map<uint64_t, std::vector<int>> grid;
    auto cell_key = [&](double x, double y) {
      const auto ix = static_cast<int64_t>(std::floor(x / cell));
      const auto iy = static_cast<int64_t>(std::floor(y / cell));
      return (static_cast<uint64_t>(ix) << 32) ^ static_cast<uint64_t>(static_cast<uint32_t>(iy));
    };
    for (int i = 0; i < static_cast<int>(boundary_samples.size()); ++i)
      grid[cell_key(boundary_samples[i].x, boundary_samples[i].y)].push_back(i);
    const double clear2 = (1.1 * h) * (1.1 * h);
    auto too_close = [&](Vec2 p) {
      const auto ix = static_cast<int64_t>(std::floor(p.x / cell));
      const auto iy = static_cast<int64_t>(std::floor(p.y / cell));
      for (int64_t dx = -2; dx <= 2; ++dx)
        for (int64_t dy = -2; dy <= 2; ++dy) {
          const uint64_t k =
              (static_cast<uint64_t>(ix + dx) << 32) ^ static_cast<uint64_t>(static_cast<uint32_t>(iy + dy));
          const auto it = grid.find(k);
          if (it == grid.end()) continue;
          for (int idx : it->second) {
            const Vec2 q = boundary_samples[idx];
            const double d2 = (p.x - q.x) * (p.x - q.x) + (p.y - q.y) * (p.y - q.y);
            if (d2 < clear2) return true;
          }
        }
      return false;
    };
    // Triangular lattice: the Delaunay triangulation of the undisturbed part
    // is near-equilateral, which keeps the stiffness matrix an M-matrix
    // (edge cotangent sums stay well above zero).  A square lattice would
    // produce exactly cocircular quads instead.
    const double s = 0.8 * h;
    const double dy = s * std::sqrt(3.0) / 2.0;
    int row = 0;
    for (double y = ymin + 0.5 * dy; y < ymax; y += dy, ++row) {
      const double x0 = xmin + (row % 2 == 0 ? 0.25 : 0.75) * s;
      for (double x = x0; x < xmax; x += s) {
        const Vec2 p{x, y};
        if (too_close(p)) continue;
        const Located loc = locate(p, last_tri, false);
        if (!tris[loc.tri].inside) continue;
        grow_cavity(p, loc.tri);
        commit(p, false);
      }
    }
  }

  bool is_bad(const Tri& t) const {
    if (!t.alive || !t.inside) return false;
    const Vec2 a = pts[t.v[0]], b = pts[t.v[1]], c = pts[t.v[2]];
    const double l2[3] = {dot(b - a, b - a), dot(c - b, c - b), dot(a - c, a - c)};
    const double lmax2 = std::max({l2[0], l2[1], l2[2]});
    if (lmax2 > h * h * (1.0 + 1e-12)) return true;
    const Vec2 ea[3] = {b - a, c - b, a - c};
    for (int i = 0; i < 3; ++i) {
      const Vec2 u = -1.0 * ea[(i + 2) % 3];
      const Vec2 w = ea[i];
      const double cs = dot(u, w) / std::sqrt(dot(u, u) * dot(w, w));
      if (cs > cos_floor) return true;  // angle below the floor
    }
    return false;
  }

  Vec2 circumcenter(const Tri& t) const {
    const Vec2 a = pts[t.v[0]], b = pts[t.v[1]], c = pts[t.v[2]];
    const double bx = b.x - a.x, by = b.y - a.y;
    const double cx = c.x - a.x, cy = c.y - a.y;
    const double d = 2.0 * (bx * cy - by * cx);
    const double b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
    return {a.x + (cy * b2 - by * c2) / d, a.y + (bx * c2 - cx * b2) / d};
  }

  void refine_quality() {
    std::deque<int> badq;
    for (int i = 0; i < static_cast<int>(tris.size()); ++i)
      if (tris[i].alive && is_bad(tris[i])) badq.push_back(i);
    std::size_t guard = 0;
    while (!badq.empty()) {
      if (++guard > 40'000'000) throw std::runtime_error("quality refinement failed to settle");
      const int ti = badq.front();
      badq.pop_front();
      if (ti >= static_cast<int>(tris.size()) || !tris[ti].alive || !is_bad(tris[ti])) continue;
      const Vec2 cc = circumcenter(tris[ti]);
      Located loc;
      try {
        loc = locate(cc, ti, true);
      } catch (const std::exception&) {
        continue;  // wild circumcenter of a degenerate triangle: drop
      }
      if (loc.tri < 0) {
        // circumcenter hides behind a constraint: split that segment instead
        if (split_wall(loc.wall_u, loc.wall_v, false)) {
          for (int f : fresh) badq.push_back(f);
          badq.push_back(ti);
        }
        continue;
      }
      grow_cavity(cc, loc.tri);
      // a circumcenter that encroaches a cavity wall splits the wall instead
      std::vector<std::array<int, 2>> encroached;
      for (const BEntry& be : entries) {
        if (!is_wall(be.a, be.b)) continue;
        const Vec2 mid = 0.5 * (pts[be.a] + pts[be.b]);
        const double half = 0.5 * dist(pts[be.a], pts[be.b]);
        if (dist(cc, mid) < half * (1.0 - 1e-12)) encroached.push_back({be.a, be.b});
      }
      if (!encroached.empty()) {
        bool split_any = false;
        for (const auto& w : encroached) {
          if (split_wall(w[0], w[1], false)) {
            split_any = true;
            for (int f : fresh) badq.push_back(f);
          }
        }
        if (split_any) badq.push_back(ti);
        continue;
      }
      commit(cc, false);
      for (int f : fresh) badq.push_back(f);
    }
  }

  Mesh extract() const {
    Mesh m;
    m.label = dom->label;
    m.loops = dom->loops;
    std::vector<int> remap(pts.size(), -1);
    for (const Tri& t : tris) {
      if (!t.alive || !t.inside) continue;
      for (int e = 0; e < 3; ++e)
        if (remap[t.v[e]] == -1) {
          remap[t.v[e]] = static_cast<int>(m.nodes.size());
          m.nodes.push_back(pts[t.v[e]]);
          m.on_boundary.push_back(onb[t.v[e]]);
        }
    }
    for (const Tri& t : tris) {
      if (!t.alive || !t.inside) continue;
      m.tris.push_back({remap[t.v[0]], remap[t.v[1]], remap[t.v[2]]});
      for (int e = 0; e < 3; ++e) {
        const int u = t.v[e], v = t.v[(e + 1) % 3];
        const auto it = wall_of.find(ekey(u, v));
        if (it == wall_of.end()) continue;
        m.bedges.push_back({remap[u], remap[v]});
        m.bedge_loop.push_back(it->second);
      }
    }
    if (m.bedges.size() != walls.size())
      throw std::logic_error("boundary bookkeeping mismatch after triangulation");
    return m;
  }

  Mesh run(const Domain& domain, const MeshParams& params) {
    dom = &domain;
    h = params.h_target;
    // refine() snaps boundary midpoints onto curved loops, which perturbs the
    // children; a margin above the contract floor keeps refined meshes legal
    cos_floor = std::cos((params.min_angle_deg + 1.5) * kPi / 180.0);
    if (h <= 0) throw std::invalid_argument("h_target must be positive");

    // feature-size guard: every loop must be resolvable at this h
    for (std::size_t li = 0; li < domain.loops.size(); ++li) {
      const Loop& loop = domain.loops[li];
      double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
      for (const Vec2& p : loop.pts) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
      }
      const double extent = std::min(xmax - xmin, ymax - ymin);
      if (loop.hole && h >= 0.5 * extent)
        throw std::invalid_argument("unresolved feature: hole loop " + std::to_string(li) +
                                    " of '" + domain.label + "' needs h < " + std::to_string(0.5 * extent));
      if (!loop.hole && h >= extent)
        throw std::invalid_argument("unresolved feature: loop " + std::to_string(li) + " of '" +
                                    domain.label + "' needs h < " + std::to_string(extent));
    }

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const Loop& loop : domain.loops)
      for (const Vec2& p : loop.pts) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
      }
    seed_super(xmin, xmax, ymin, ymax);
    insert_loops();
    recover_walls();
    classify();
    seed_interior(xmin, xmax, ymin, ymax);
    refine_quality();
    return extract();
  }
};

}  // namespace

Mesh triangulate(const Domain& domain, const MeshParams& params) {
  Triangulator t;
  return t.run(domain, params);
}

}  // namespace tlab
