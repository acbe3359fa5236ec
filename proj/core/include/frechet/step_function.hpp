#pragma once

#include <vector>

namespace frechet {

/// Piecewise-constant function on [0,1]: value values[i] on
/// [breaks[i], breaks[i+1]), with the last piece closed at 1.
class StepFunction {
 public:
  StepFunction(std::vector<double> breaks, std::vector<double> values);

  double operator()(double x) const;

  /// Exact Lebesgue integral over [lo, hi] clipped to [0,1].
  double integral(double lo, double hi) const;

  double sup_abs() const;
  const std::vector<double>& breaks() const { return breaks_; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> breaks_;  // 0 = b_0 < ... < b_M = 1
  std::vector<double> values_;  // M values
};

/// Rademacher-type square wave at dyadic scale n >= 1: alternates +1/-1 on
/// 2^n equal intervals, so it is bounded by 1 and integrates to zero.
StepFunction rademacher_step(int n);

}  // namespace frechet
