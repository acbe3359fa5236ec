#include "frechet/stick_breaking.hpp"

#include <stdexcept>

#include "frechet/rng.hpp"

namespace frechet {

DPStickBreaking DPStickBreaking::sample(double c, const Grid1D& nu, RngStream& rng,
                                        double residual_tol) {
  return sample_posterior(c, nu, {}, rng, residual_tol);
}

DPStickBreaking DPStickBreaking::sample_posterior(double c, const Grid1D& nu,
                                                  const std::vector<double>& ys, RngStream& rng,
                                                  double residual_tol) {
  if (!(c > 0.0)) throw std::invalid_argument("DPStickBreaking: concentration must be positive");
  if (!(residual_tol > 0.0 && residual_tol < 1.0))
    throw std::invalid_argument("DPStickBreaking: residual_tol must lie in (0,1)");
  const double n = static_cast<double>(ys.size());
  const double total = c + n;
  constexpr int kMaxSticks = 1 << 20;

  auto draw_location = [&]() {
    // base measure (c nu + sum delta_{y_i}) / (c+n)
    if (!ys.empty() && rng.uniform() * total >= c)
      return ys[rng.uniform_index(ys.size())];
    return nu.sample(rng);
  };

  std::vector<std::pair<double, double>> atoms;
  double remaining = 1.0;
  while (remaining >= residual_tol) {
    if (static_cast<int>(atoms.size()) >= kMaxSticks)
      throw std::runtime_error("DPStickBreaking: truncation level exploded");
    const double v = rng.beta(1.0, total);
    atoms.emplace_back(draw_location(), remaining * v);
    remaining *= 1.0 - v;
  }
  // final atom absorbs the residual so the weights sum to one
  atoms.emplace_back(draw_location(), remaining);
  return DPStickBreaking(c, std::move(atoms));
}

double DPStickBreaking::cdf(double y) const {
  double total = 0.0;
  for (const auto& [loc, w] : atoms_)
    if (loc <= y) total += w;
  return total;
}

double DPStickBreaking::measure(const IntervalSet& set) const {
  double total = 0.0;
  for (const auto& [loc, w] : atoms_)
    if (set.contains(loc)) total += w;
  return total;
}

double DPStickBreaking::draw_point(RngStream& rng) const {
  double u = rng.uniform();
  for (const auto& [loc, w] : atoms_) {
    if (u < w) return loc;
    u -= w;
  }
  return atoms_.back().first;
}

}  // namespace frechet
