#pragma once

// Reference values recomputed from series and special functions, independent
// of the library code under test. Frozen decimal constants are checked
// against these recomputations in the suites that use them.

#include <cmath>
#include <stdexcept>

#include "tlab/geometry.hpp"

namespace oracles {

inline constexpr double kPi = 3.14159265358979323846;

// First positive zero of J0, by bisection on std::cyl_bessel_j.
inline double bessel_j01() {
  double lo = 2.0, hi = 3.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (std::cyl_bessel_j(0, lo) * std::cyl_bessel_j(0, mid) <= 0.0)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

inline double disk_lambda1() {
  const double j = bessel_j01();
  return j * j;
}

// Unit square (0,1)^2, torsion function value at the center.
inline double square_torsion_max() {
  double s = 0.0;
  for (int k = 1; k < 400; k += 2) {
    const double sign = ((k - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
    s += sign * (4.0 / (k * k * k * kPi * kPi * kPi)) * (1.0 - 1.0 / std::cosh(k * kPi / 2.0));
  }
  return s;
}

// Unit square, integral of the torsion function.
inline double square_torsion_integral() {
  double s = 0.0;
  for (int k = 1; k < 400; k += 2) {
    const double k4 = double(k) * k * k * k;
    s += (8.0 / (k4 * kPi * kPi * kPi * kPi)) *
         (1.0 - (2.0 / (k * kPi)) * std::tanh(k * kPi / 2.0));
  }
  return s;
}

// Rectangle (-n, n) x (0, 1).
inline double rect_lambda1(double n) { return kPi * kPi * (1.0 + 1.0 / (4.0 * n * n)); }

inline double rect_torsion_max(double n) {
  double s = 1.0 / 8.0;
  for (int k = 1; k < 200; k += 2) {
    const double sign = ((k - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
    s -= sign * (4.0 / (k * k * k * kPi * kPi * kPi)) / std::cosh(k * kPi * n);
  }
  return s;
}

inline double rect_torsion_integral(double n) {
  double s = 2.0 * n / 12.0;
  for (int k = 1; k < 200; k += 2) {
    const double k5 = double(k) * k * k * k * k;
    s -= (16.0 / (k5 * kPi * kPi * kPi * kPi * kPi)) * std::tanh(k * kPi * n);
  }
  return s;
}

// Screened slab profile max: -u'' + a u = 1 on a width-1 strip.
inline double slab_screened_max(double a) {
  return (1.0 - 1.0 / std::cosh(std::sqrt(a) / 2.0)) / a;
}

// Unit disk pieces (radius 1, centered).
inline double disk_torsion(double rho) { return (1.0 - rho * rho) / 4.0; }

inline double disk_eigenfunction(double rho) {
  const double j = bessel_j01();
  return std::cyl_bessel_j(0, j * rho) / (std::sqrt(kPi) * std::cyl_bessel_j(1, j));
}

// Regular part of the Green function of the unit disk, pole at x0 != 0:
// w(x) = (1/2pi) log(|x0| |x - x0/|x0|^2|).
inline double disk_green_regular(tlab::Vec2 x, tlab::Vec2 x0) {
  const double r0 = tlab::norm(x0);
  if (r0 == 0.0) return 0.0;
  const tlab::Vec2 mirror{x0.x / (r0 * r0), x0.y / (r0 * r0)};
  return std::log(r0 * tlab::dist(x, mirror)) / (2.0 * kPi);
}

// Green function of the unit disk with the pole at the origin.
inline double disk_green_center(double rho) { return -std::log(rho) / (2.0 * kPi); }

// Hole-sensitivity field of the unit disk at x = (1 - delta, 0), divided by
// delta^3: R(x) = M phi(x)^2 - lambda1 u(x) G_x(0). Tends to j01^2/(4 pi)
// as delta -> 0.
inline double disk_R_over_delta3(double delta) {
  const double j = bessel_j01();
  const double rho = 1.0 - delta;
  const double phi = disk_eigenfunction(rho);
  const double R = 0.25 * phi * phi - j * j * disk_torsion(rho) * disk_green_center(rho);
  return R / (delta * delta * delta);
}

// Closed forms for the triangle boundary-moment integrals.
inline double moment_I0() { return 3.0 / 4.0; }
inline double moment_I2() { return 1.0 / 16.0 - 15.0 / (32.0 * kPi * kPi); }
inline double moment_I4() {
  const double p2 = kPi * kPi;
  return 3.0 / 320.0 - 15.0 / (64.0 * p2) + 189.0 / (128.0 * p2 * p2);
}
inline double moment_combination() { return moment_I4() - moment_I2() - (7.0 / 48.0) * moment_I0(); }

}  // namespace oracles
