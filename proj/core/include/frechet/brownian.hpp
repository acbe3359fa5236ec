#pragma once

#include <functional>
#include <string>
#include <vector>

namespace frechet {

class RngStream;
struct Rect;

/// Bounded path functional with admissible range [-1/2,1/2] or [0,1].
struct PathMap {
  std::string name;
  std::function<double(double)> fn;

  static PathMap tanh_half();   // 0.5 * tanh(x)
  static PathMap sin_half();    // 0.5 * sin(x)
  static PathMap clamp_unit();  // clamp(x + 1/2, 0, 1)
  static PathMap step_unit();   // 1{x > 0}
  static PathMap by_name(const std::string& name);
};

/// Random density f(x,y) = 1 + g(x) h(y) built from two discretized
/// Brownian paths: g(t) = phi(W_1(t)) - int_0^1 phi(W_1(s)) ds with the
/// centering integral computed by the trapezoid rule on the path nodes,
/// and h likewise from W_2.
///
/// rectangle_prob integrates the piecewise-linear interpolant of the
/// centered node values exactly, so the realized density has exact uniform
/// marginals and satisfies
///
///   rectangle_prob(a,b) = a*b + 4 * occupation(1,a) * occupation(2,b)
///
/// identically. quadrature_rectangle_prob instead integrates the pointwise
/// density on an independent grid; its deviation from the identity is the
/// discretization residual, which shrinks as O(1/n_steps).
class BrownianDensity {
 public:
  BrownianDensity(PathMap phi, std::vector<double> w1, std::vector<double> w2);

  int n_steps() const { return static_cast<int>(w1_.size()) - 1; }

  /// Pointwise coordinate functions: phi evaluated on the linearly
  /// interpolated path, minus the trapezoid centering constant.
  double g(double t) const;
  double h(double t) const;
  double density(double x, double y) const { return 1.0 + g(x) * h(y); }

  /// Exact rectangle probability of the interpolant density.
  double rectangle_prob(double a, double b) const;
  double rectangle_prob(const Rect& H) const;

  /// Centered occupation functional
  ///   U_i(t) = (1/2) ( int_0^t phi(W_i) ds - t int_0^1 phi(W_i) ds ),
  /// time integrals by the trapezoid rule on the path nodes.
  double occupation(int which, double t) const;

  const std::vector<double>& path(int which) const { return which == 1 ? w1_ : w2_; }
  const PathMap& phi() const { return phi_; }

 private:
  double trapezoid_prefix(const std::vector<double>& vals, double t) const;

  PathMap phi_;
  std::vector<double> w1_, w2_;       // path values at t_j = j/n
  std::vector<double> pv1_, pv2_;     // phi(W(t_j))
  double c1_ = 0.0, c2_ = 0.0;        // trapezoid centering constants
};

/// Simulates two independent Brownian paths with n_steps Euler increments
/// and builds the induced density. Requires n_steps >= 1000 and an
/// admissible phi (range checked on a probe grid).
BrownianDensity brownian_density(const PathMap& phi, int n_steps, RngStream& rng);

/// Composite two-point Gauss quadrature of the pointwise density over
/// [0,a] x [0,b] on a subdivision independent of the path nodes.
double quadrature_rectangle_prob(const BrownianDensity& f, double a, double b,
                                 int subdivisions_per_step = 4);

}  // namespace frechet
