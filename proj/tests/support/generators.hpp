#pragma once

// Deterministic shape generators shared by the property suites.

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "tlab/geometry.hpp"

namespace generators {

// Convex polygon with 5..12 vertices and roughly unit area, reproducible
// from the seed: random support points on a star domain, convex hull, then
// area normalization.
inline std::vector<tlab::Vec2> convex_polygon(unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> radius(0.5, 1.5);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.14159265358979323846);
  for (int attempt = 0; attempt < 50; ++attempt) {
    const int n = 5 + static_cast<int>(rng() % 8u);
    std::vector<double> angles(n);
    for (double& a : angles) a = angle(rng);
    std::sort(angles.begin(), angles.end());
    std::vector<tlab::Vec2> pts;
    pts.reserve(n);
    for (int i = 0; i < n; ++i) {
      const double r = radius(rng);
      pts.push_back({r * std::cos(angles[i]), r * std::sin(angles[i])});
    }
    std::vector<tlab::Vec2> hull = tlab::convex_hull(pts);
    if (hull.size() < 4) continue;
    const double area = tlab::polygon_signed_area(hull);
    if (!(area > 0.0)) continue;
    const double s = 1.0 / std::sqrt(area);
    for (auto& p : hull) p = s * p;
    double diam = 0.0;
    for (size_t i = 0; i < hull.size(); ++i)
      for (size_t k = i + 1; k < hull.size(); ++k) diam = std::max(diam, tlab::dist(hull[i], hull[k]));
    if (diam > 4.5) continue;  // unit area: reject slivers the mesher would hate
    return hull;
  }
  throw std::runtime_error("convex polygon generator exhausted its attempts");
}

}  // namespace generators
