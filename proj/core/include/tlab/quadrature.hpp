#pragma once

#include <functional>

namespace tlab {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int intervals = 0;
  bool converged = false;
};

// Adaptive Gauss-Kronrod 7-15 with an absolute tolerance budget.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol = 1e-12, int max_intervals = 4000);

}  // namespace tlab
