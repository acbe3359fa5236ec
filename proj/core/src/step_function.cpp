#include "frechet/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace frechet {

StepFunction::StepFunction(std::vector<double> breaks, std::vector<double> values)
    : breaks_(std::move(breaks)), values_(std::move(values)) {
  if (breaks_.size() != values_.size() + 1 || values_.empty())
    throw std::invalid_argument("StepFunction: need M+1 breaks for M values");
  if (breaks_.front() != 0.0 || breaks_.back() != 1.0)
    throw std::invalid_argument("StepFunction: domain must be [0,1]");
  for (std::size_t i = 1; i < breaks_.size(); ++i)
    if (!(breaks_[i] > breaks_[i - 1]))
      throw std::invalid_argument("StepFunction: breaks must increase");
}

double StepFunction::operator()(double x) const {
  if (x <= 0.0) return values_.front();
  if (x >= 1.0) return values_.back();
  const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
  return values_[static_cast<std::size_t>(it - breaks_.begin()) - 1];
}

double StepFunction::integral(double lo, double hi) const {
  lo = std::max(lo, 0.0);
  hi = std::min(hi, 1.0);
  if (lo >= hi) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double ov = std::min(hi, breaks_[i + 1]) - std::max(lo, breaks_[i]);
    if (ov > 0.0) total += values_[i] * ov;
  }
  return total;
}

double StepFunction::sup_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

StepFunction rademacher_step(int n) {
  if (n < 1 || n > 30) throw std::invalid_argument("rademacher_step: scale out of range");
  const int pieces = 1 << n;
  std::vector<double> breaks(pieces + 1), values(pieces);
  for (int i = 0; i <= pieces; ++i) breaks[i] = static_cast<double>(i) / pieces;
  for (int i = 0; i < pieces; ++i) values[i] = (i % 2 == 0) ? 1.0 : -1.0;
  return StepFunction(std::move(breaks), std::move(values));
}

}  // namespace frechet
