#pragma once

#include <optional>
#include <vector>

#include "frechet/grid.hpp"
#include "frechet/rational.hpp"

namespace frechet {

class RngStream;

/// Uniform density on the permutation band S_sigma = union_j I_j x I_sigma(j)
/// at resolution k; permutations are stored 0-based.
struct PermDensity {
  int k;
  std::vector<int> sigma;

  PermDensity(int k_, std::vector<int> sigma_);
  bool in_support(double x, double y) const;
  double density(double x, double y) const { return in_support(x, y) ? k : 0.0; }
};

class CheckerboardDensity;

/// Mixture of permutation densities f = sum_i U_i f_{sigma_i} with weights
/// on the simplex. All rectangle probabilities are evaluated in exact
/// rational arithmetic before the final conversion to double.
class CheckerboardMixture {
 public:
  CheckerboardMixture(int k, std::vector<std::vector<int>> perms, std::vector<double> weights);

  int k() const { return k_; }
  std::size_t n_components() const { return perms_.size(); }
  const std::vector<std::vector<int>>& perms() const { return perms_; }
  const std::vector<double>& weights() const { return weights_; }

  /// P_f([0,a] x [0,b]) by the closed form over permutation bands.
  double rectangle_prob(double a, double b) const;
  double rectangle_prob(const Rect& H) const;
  Rational rectangle_prob_exact(const Rational& a, const Rational& b) const;

  double density(double x, double y) const;

  /// Induced coefficient matrix d = k * D with D_{j,h} = sum_{i: sigma_i(j)=h} U_i.
  CheckerboardDensity to_matrix() const;

  /// One draw from the mixture density (component, band cell, then uniform).
  std::pair<double, double> sample_point(RngStream& rng) const;

 private:
  int k_;
  std::vector<std::vector<int>> perms_;
  std::vector<double> weights_;
};

/// Piecewise-constant density g(x,y) = sum_{j,h} d_{j,h} 1_{I_j}(x) 1_{I_h}(y)
/// whose coefficient matrix divided by k is doubly stochastic. Entries are
/// held exactly so representation changes preserve rectangle probabilities.
class CheckerboardDensity {
 public:
  CheckerboardDensity(int k, std::vector<Rational> d_row_major);
  static CheckerboardDensity from_doubles(int k, const std::vector<double>& d_row_major);

  int k() const { return k_; }
  double d(int j, int h) const;
  const Rational& d_exact(int j, int h) const;

  double density(double x, double y) const;
  double rectangle_prob(double a, double b) const;
  double rectangle_prob(const Rect& H) const;
  Rational rectangle_prob_exact(const Rational& a, const Rational& b) const;

  /// Piecewise-uniform measure at the given resolution (multiple of k).
  Grid2D to_grid(int resolution) const;

 private:
  int k_;
  std::vector<Rational> d_;
};

/// Coarse projection of a coupling with uniform marginals:
/// d_{j,h} = k^2 p(I_j x I_h). Throws if the marginals are not uniform.
CheckerboardDensity project_coupling(const Grid2D& p, int k);

/// All k! permutations of {0,...,k-1}; guarded to k <= 6.
std::vector<std::vector<int>> all_permutations(int k);

/// Draws simplex weights from the Dirichlet law over the given permutations.
CheckerboardMixture sample_mixture(const std::vector<std::vector<int>>& perms, int k,
                                   const std::vector<double>& dirichlet_alphas,
                                   RngStream& rng);

/// Truncated geometric law for a random resolution K on {1,...,k_max}.
struct RandomKLaw {
  double success_prob = 0.5;
  int k_max = 8;
  int sample(RngStream& rng) const;
};

/// Draws K from the resolution law, then a mixture over min(m, K!) distinct
/// uniformly chosen permutations of {0,...,K-1}.
CheckerboardMixture sample_mixture_random_k(const std::vector<double>& dirichlet_alphas,
                                            const RandomKLaw& k_law, RngStream& rng);

}  // namespace frechet
