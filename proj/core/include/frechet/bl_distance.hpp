#pragma once

#include <vector>

#include "frechet/grid.hpp"

namespace frechet {

/// Solution of the bounded-Lipschitz linear program
///
///   maximize   sum_i phi_i (p_i - q_i)
///   subject to |phi_i| <= 1,
///              |phi_i - phi_j| <= metric_scale * ||center_i - center_j||
///
/// over the common cell centers of p and q. The program is solved exactly
/// through its min-cost-flow dual; `phi` is a feasible primal witness and
/// `gap` the certified duality gap (flow cost minus witness objective).
struct BlSolution {
  double value = 0.0;          // objective of the feasible witness phi
  double flow_cost = 0.0;      // dual (upper) bound
  double gap = 0.0;            // flow_cost - value, certified <= tolerance
  std::vector<double> phi;     // witness, one entry per cell (row-major)
  int augmentations = 0;
};

/// Full solution with optimality certificate; throws if the certificate
/// cannot be established to within `gap_tol` (implementation bug).
BlSolution bl_distance_detail(const Grid2D& p, const Grid2D& q,
                              double metric_scale = 1.0, double gap_tol = 1e-8);

/// Bounded-Lipschitz distance between two measures on the same grid.
double bl_distance(const Grid2D& p, const Grid2D& q, double metric_scale = 1.0);

}  // namespace frechet
