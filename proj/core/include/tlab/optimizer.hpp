#pragma once

#include <string>
#include <vector>

#include "tlab/geometry.hpp"

namespace tlab {

struct OptimizerParams {
  double h = 0.04;             // mesh target for objective/gradient evaluations
  int levels = 2;              // nested levels per evaluation (>= 1)
  int max_iters = 40;
  double grad_tol_rel = 2e-3;  // converged when |grad| <= tol * G
  double armijo = 0.1;
  double backtrack = 0.5;
  int max_step_halvings = 20;  // line-search failures in a row before "stalled"
  double step0 = 0.0;          // 0 = scale from the first gradient
};

struct OptimStep {
  std::vector<Vec2> vertices;  // accepted iterate: convex, unit area
  double G = 0.0;
  double grad_norm = 0.0;
  double step = 0.0;  // accepted step size (0 for the seed row)
};

// Projected gradient ascent of G over convex polygons with a fixed vertex
// budget: move along the boundary-flux gradient, project back onto convex
// unit-area polygons, accept by an Armijo test on the projected increment.
struct OptimTrace {
  std::vector<OptimStep> iterates;  // seed first; G is strictly nondecreasing
  std::string status;               // converged | max-iters | stalled
  std::vector<Vec2> best;
  double best_G = 0.0;  // extrapolated report value at the best iterate
  int evaluations = 0;  // objective evaluations spent
};

OptimTrace maximize_G(const std::vector<Vec2>& seed, const OptimizerParams& params);

}  // namespace tlab
