#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tlab/fem.hpp"
#include "tlab/geometry.hpp"

namespace tlab {

struct LevelRow {
  double h = 0;       // max edge length of the level's mesh
  int n_tris = 0;
  double T = 0;       // integral of the torsion function
  double M = 0;       // fitted maximum of the torsion function
  double lambda = 0;  // first Dirichlet eigenvalue
};

// T, M, lambda1 across >= 2 nested mesh levels with order-2 extrapolation of
// the finest pair; F = T/(M |Omega|), G = M lambda1.
struct FunctionalReport {
  std::string domain_label;
  double area = 0;
  double perimeter = 0;
  bool convex = false;
  std::vector<LevelRow> levels;
  double T = 0, M = 0, lambda1 = 0;  // extrapolated
  Vec2 x0{0, 0};                     // maximum-point estimate at the finest level
  double F = 0, G = 0;
  double F_uncertainty = 0;  // |last level - previous level|
  double G_uncertainty = 0;
};

FunctionalReport functional_report(const Domain& domain, double h, int levels);

// Constants of the curvature-pinch bounds for strictly convex analytic
// boundaries: alpha = (k_min/k_max)^3 / 4, beta = 2 - alpha, and the window
// alpha/(alpha+1) <= F <= beta/(beta+1) together with the floor F >= alpha.
struct CurvatureBounds {
  bool applicable = false;
  std::string reason;
  double k_min = 0, k_max = 0;
  double alpha = 0, beta = 0;
  double F_low = 0, F_high = 0;
  double F_floor = 0;
};

CurvatureBounds curvature_bounds(const Domain& domain);

struct BoundCheck {
  std::string name;
  std::string inequality;
  double margin = 0;   // positive = inequality satisfied with room to spare
  std::string status;  // holds | violated | not-applicable | conjecture-consistent | conjecture-inconsistent
};

// Audit every inequality applicable to this domain using the report's
// extrapolated values; rel_allowance absorbs discretization error.
std::vector<BoundCheck> bound_audit(const Domain& domain, const FunctionalReport& report,
                                    double rel_allowance = 0.005);

struct PFunctionCheck {
  bool applicable = false;
  double max_p = 0;  // max over vertices of |grad u|^2 + 2u
  double ratio = 0;  // max_p / (2M)
};

PFunctionCheck p_function_check(const Mesh& mesh, const ScalarField& torsion, double M,
                                bool domain_convex);

}  // namespace tlab
