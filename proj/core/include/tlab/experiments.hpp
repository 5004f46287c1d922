#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tlab/functionals.hpp"

namespace tlab {

// One checked line of a study: measured values plus the target they are held
// against. `source` says where the target comes from (closed-form, bound,
// identity, monotonicity, reference); rows with status "info" carry no check.
struct StudyRow {
  std::string parameter;
  std::vector<std::pair<std::string, double>> values;
  std::string target;
  std::string source;
  double margin = 0.0;  // signed slack; >= 0 when the check holds
  std::string status;   // ok | violated | info
};

struct StudyTable {
  std::string name;
  std::vector<std::string> notes;
  std::vector<StudyRow> rows;
  bool all_ok = true;

  void add(StudyRow row);
};

// Long rectangles (-n, n) x (0, 1): F, lambda1, M, G against the strip
// limits, plus monotonicity of F in n.
StudyTable run_rectangle_study(const std::vector<double>& half_widths, double h, int levels);

// Unit disk plus n satellite disks of radius n^(-1/4): measured F against
// the closed form 1/(1 + sqrt(n)).
StudyTable run_cluster_study(const std::vector<int>& counts, double h, int levels);

// Screened problem -Delta u + a u = 1 on a fixed base domain for increasing
// screens a; checks the scaled maximum principle a max u <= 1, the product
// bound, and monotonicity of the screened ratio. The mesh obeys
// h <= 1/(4 sqrt(a)); screens needing a mesh finer than h_floor are rejected.
StudyTable run_homogenized_study(const DomainSpec& base, const std::vector<double>& screens,
                                 double h, double h_floor = 2e-3);

// Perforated unit square with hole radius exp(-C0/eps^2) on a 2 eps lattice,
// compared qualitatively against the screened problem with a = pi/(2 C0).
StudyTable run_perforated_study(const std::vector<double>& epsilons, double C0, double h,
                                int levels);

// Quadrature-only study of the boundary moment system on the equilateral
// triangle: the moment integrals against their closed forms and the critical
// combination against -1/8.
StudyTable run_triangle_criticality();

// G for a list of domains, sorted descending, with level-to-level
// uncertainties and resolved/unresolved gap classification.
StudyTable run_league_table(const std::vector<DomainSpec>& entries, double h, int levels);

}  // namespace tlab
