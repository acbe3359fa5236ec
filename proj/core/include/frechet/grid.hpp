#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace frechet {

class RngStream;

/// Tolerance for "masses sum to one" checks on construction.
inline constexpr double kMassTolerance = 1e-12;

/// Axis-aligned rectangle [x0,x1] x [y0,y1] inside the unit square.
struct Rect {
  double x0, x1, y0, y1;
  Rect(double x0_, double x1_, double y0_, double y1_);
  double area() const { return (x1 - x0) * (y1 - y0); }
};

/// Union of closed intervals inside [0,1]; overlaps are merged.
class IntervalSet {
 public:
  IntervalSet() = default;
  IntervalSet(double lo, double hi);
  explicit IntervalSet(std::vector<std::pair<double, double>> intervals);

  static IntervalSet full() { return IntervalSet(0.0, 1.0); }

  bool contains(double x) const;
  double length() const;
  const std::vector<std::pair<double, double>>& intervals() const { return intervals_; }
  bool empty() const { return intervals_.empty(); }

 private:
  std::vector<std::pair<double, double>> intervals_;  // sorted, disjoint
};

class Cdf1D;

/// Piecewise-uniform probability measure on [0,1] with n equal cells.
/// Cell i covers ((i)/n, (i+1)/n] and carries mass weights[i].
class Grid1D {
 public:
  explicit Grid1D(std::vector<double> weights);
  static Grid1D uniform(int n_cells);

  int n_cells() const { return static_cast<int>(weights_.size()); }
  double weight(int i) const { return weights_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& weights() const { return weights_; }

  double cell_left(int i) const { return static_cast<double>(i) / n_cells(); }
  double cell_right(int i) const { return static_cast<double>(i + 1) / n_cells(); }
  double cell_center(int i) const { return (i + 0.5) / n_cells(); }

  /// Index of the cell containing x, with boundary points assigned to the
  /// cell on their right except at x = 1 (left-closed-right-open convention).
  int cell_index(double x) const;

  /// Measure of the interval (lo, hi) clipped to [0,1]; exact for the
  /// piecewise-uniform density (boundary convention is null).
  double measure(double lo, double hi) const;
  double measure(const IntervalSet& set) const;

  Cdf1D cdf() const;

  /// Draws one point: pick a cell by weight, then uniform inside it.
  double sample(RngStream& rng) const;

 private:
  std::vector<double> weights_;
};

/// Piecewise-uniform probability measure on [0,1]^2 with k_x x k_y cells.
/// mass(ix, iy) is the mass of cell (ix/k_x,(ix+1)/k_x] x (iy/k_y,(iy+1)/k_y].
class Grid2D {
 public:
  Grid2D(int k_x, int k_y, std::vector<double> mass_row_major);

  static Grid2D uniform(int k_x, int k_y);
  static Grid2D product(const Grid1D& mu, const Grid1D& nu);

  int k_x() const { return k_x_; }
  int k_y() const { return k_y_; }
  double mass(int ix, int iy) const { return mass_[idx(ix, iy)]; }
  const std::vector<double>& masses() const { return mass_; }

  std::pair<double, double> cell_center(int ix, int iy) const {
    return {(ix + 0.5) / k_x_, (iy + 0.5) / k_y_};
  }

  /// Exact probability of an axis-aligned rectangle under the
  /// piecewise-uniform density.
  double rect_prob(const Rect& r) const;

  /// Block sum p(I_j x I_h) on the coarse k x k dyadic partition;
  /// requires k to divide both axis resolutions.
  double block_mass(int k, int j, int h) const;

  /// Refines each cell into equal subcells; exact for piecewise-uniform mass.
  Grid2D refine(int factor_x, int factor_y) const;

 private:
  std::size_t idx(int ix, int iy) const {
    return static_cast<std::size_t>(ix) * k_y_ + iy;
  }
  int k_x_, k_y_;
  std::vector<double> mass_;
};

/// Monotone right-continuous distribution function on a stored knot grid.
/// Linear mode interpolates between knots (continuous measures); step mode
/// jumps at knots (atomic measures).
class Cdf1D {
 public:
  enum class Mode { linear, step };

  Cdf1D(std::vector<double> knots, std::vector<double> values, Mode mode);
  static Cdf1D from_atoms(std::vector<double> locations, std::vector<double> weights);

  double operator()(double t) const;
  Mode mode() const { return mode_; }
  const std::vector<double>& knots() const { return knots_; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> knots_;   // strictly increasing
  std::vector<double> values_;  // F at knots, non-decreasing, last = 1
  Mode mode_;
};

/// Row-sum and column-sum marginals of a coupling.
std::pair<Grid1D, Grid1D> marginals(const Grid2D& p);

/// Generalized inverse inf{t : F(t) >= u}; u = 0 returns the leftmost
/// support point. Throws if u is outside [0,1].
double quantile(const Cdf1D& F, double u);

/// Random coupling with uniform marginals: positive i.i.d. cell masses
/// rescaled to uniform marginals by Sinkhorn iteration.
Grid2D random_coupling(int k, RngStream& rng, int sinkhorn_iters = 200);

}  // namespace frechet
