#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "frechet/grid.hpp"
#include "frechet/step_function.hpp"

namespace frechet {

class RngStream;

/// One coordinate function of a separable perturbation term. `eval` is the
/// pointwise map and `integral(lo,hi)` its exact (or high-accuracy) Lebesgue
/// integral over [lo,hi]; integrals against piecewise-uniform measures
/// reduce to weighted sums of these.
struct BasisFunction {
  std::function<double(double)> eval;
  std::function<double(double, double)> integral;

  static BasisFunction from_step(StepFunction f);
  /// cos(n*pi*x): bounded by 1 with zero mean on [0,1].
  static BasisFunction cosine(int n);
};

struct BasisPair {
  BasisFunction g;
  BasisFunction h;
};

/// n pairs of Rademacher square waves (g_n = h_n) at scales 1..n.
std::vector<BasisPair> haar_basis_pairs(int n);
/// n pairs of cosines at frequencies 1..n; smooth alternative to the steps.
std::vector<BasisPair> cosine_basis_pairs(int n);

/// Integral of f against a piecewise-uniform measure over [lo,hi].
double measure_integral(const BasisFunction& f, const Grid1D& m, double lo, double hi);

/// Checks boundedness (sup <= 1 on a dense probe grid) and zero mean under
/// the given marginals (within 1e-8); throws on violation.
void validate_basis_pair(const BasisPair& pair, const Grid1D& mu, const Grid1D& nu);

/// Law of the coefficient vector: U_n = weight_n * V_n with the V_n
/// independent and bounded by 1, so sum |U_n| <= sum weight_n <= 1 holds by
/// construction. Each component knows its characteristic function.
class CoeffLaw {
 public:
  enum class Kind { uniform, rademacher, fixed };
  struct Component {
    double weight;       // scale of the coefficient
    Kind kind;
    double fixed_value;  // used by Kind::fixed, |value| <= 1
  };

  explicit CoeffLaw(std::vector<Component> components, bool independent = true);

  /// weight_n = 2^-n, V_n uniform on [-1,1].
  static CoeffLaw scaled_uniform(int n);
  /// weight_n = 2^-n, V_n = +-1 with equal probability.
  static CoeffLaw scaled_rademacher(int n);
  /// Degenerate law at the given coefficient values.
  static CoeffLaw fixed(std::vector<double> values);

  std::size_t size() const { return components_.size(); }
  bool independent() const { return independent_; }
  const std::vector<Component>& components() const { return components_; }

  std::vector<double> sample(RngStream& rng) const;
  /// Characteristic function of U_n at t.
  std::complex<double> char_fn(std::size_t n, double t) const;

 private:
  std::vector<Component> components_;
  bool independent_;
};

/// Random density 1 + sum_n U_n g_n(x) h_n(y) realized at fixed coefficients.
class TensorDensity {
 public:
  TensorDensity(std::vector<BasisPair> basis, std::vector<double> coeffs,
                Grid1D mu, Grid1D nu);

  double density(double x, double y) const;
  /// lambda(H) + sum_n U_n a_n(H), with a_n factorized over the rectangle.
  double rectangle_prob(const Rect& H) const;

  const std::vector<double>& coeffs() const { return coeffs_; }
  const std::vector<BasisPair>& basis() const { return basis_; }
  const Grid1D& mu() const { return mu_; }
  const Grid1D& nu() const { return nu_; }

 private:
  std::vector<BasisPair> basis_;
  std::vector<double> coeffs_;
  Grid1D mu_, nu_;
};

/// Prior over tensor densities: fixed basis plus a coefficient law.
class TensorPrior {
 public:
  TensorPrior(std::vector<BasisPair> basis, CoeffLaw law, Grid1D mu, Grid1D nu);

  TensorDensity sample(RngStream& rng) const;

  /// E exp(i t P_f(H)) = exp(i lambda(H) t) prod_n cf_n(a_n(H) t).
  /// Requires independent coefficients.
  std::complex<double> char_function(const Rect& H, double t) const;

  /// a_n(H) = int_H g_n h_n d(mu x nu).
  double basis_rect_integral(std::size_t n, const Rect& H) const;
  double lambda(const Rect& H) const;

  const CoeffLaw& law() const { return law_; }
  const std::vector<BasisPair>& basis() const { return basis_; }
  const Grid1D& mu() const { return mu_; }
  const Grid1D& nu() const { return nu_; }

 private:
  std::vector<BasisPair> basis_;
  CoeffLaw law_;
  Grid1D mu_, nu_;
};

}  // namespace frechet
