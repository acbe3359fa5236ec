#pragma once

#include <utility>
#include <vector>

#include "frechet/grid.hpp"

namespace frechet {

class RngStream;

/// Truncated stick-breaking realization of a Dirichlet random probability
/// measure with concentration c and base measure nu. Sticks are drawn until
/// the residual mass falls below `residual_tol`; the final atom absorbs the
/// remainder so the weights sum to one.
class DPStickBreaking {
 public:
  /// Draw from the prior DP(c, nu).
  static DPStickBreaking sample(double c, const Grid1D& nu, RngStream& rng,
                                double residual_tol = 1e-8);

  /// Draw from the posterior given observed second coordinates: a DP with
  /// concentration c+n and base (c nu + sum_i delta_{y_i}) / (c+n). With an
  /// empty data vector this is exactly the prior draw (same stream use).
  static DPStickBreaking sample_posterior(double c, const Grid1D& nu,
                                          const std::vector<double>& ys, RngStream& rng,
                                          double residual_tol = 1e-8);

  double concentration() const { return c_; }
  int truncation_level() const { return static_cast<int>(atoms_.size()); }
  const std::vector<std::pair<double, double>>& atoms() const { return atoms_; }

  /// G(y) = Q((-infinity, y]).
  double cdf(double y) const;
  /// Q(B) for a union of intervals.
  double measure(const IntervalSet& set) const;
  /// One draw Y ~ Q.
  double draw_point(RngStream& rng) const;

 private:
  DPStickBreaking(double c, std::vector<std::pair<double, double>> atoms)
      : c_(c), atoms_(std::move(atoms)) {}
  double c_;
  std::vector<std::pair<double, double>> atoms_;  // (location, weight)
};

}  // namespace frechet
