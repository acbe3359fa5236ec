#include "frechet/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "frechet/rng.hpp"

namespace frechet {

Rect::Rect(double x0_, double x1_, double y0_, double y1_)
    : x0(x0_), x1(x1_), y0(y0_), y1(y1_) {
  if (!(x0 >= 0.0 && x1 <= 1.0 && y0 >= 0.0 && y1 <= 1.0 && x0 <= x1 && y0 <= y1))
    throw std::invalid_argument("Rect: must satisfy 0 <= x0 <= x1 <= 1 and 0 <= y0 <= y1 <= 1");
}

IntervalSet::IntervalSet(double lo, double hi) {
  if (!(lo <= hi && lo >= 0.0 && hi <= 1.0))
    throw std::invalid_argument("IntervalSet: need 0 <= lo <= hi <= 1");
  intervals_.emplace_back(lo, hi);
}

IntervalSet::IntervalSet(std::vector<std::pair<double, double>> intervals) {
  for (const auto& [lo, hi] : intervals)
    if (!(lo <= hi && lo >= 0.0 && hi <= 1.0))
      throw std::invalid_argument("IntervalSet: need 0 <= lo <= hi <= 1");
  std::sort(intervals.begin(), intervals.end());
  for (const auto& iv : intervals) {
    if (!intervals_.empty() && iv.first <= intervals_.back().second)
      intervals_.back().second = std::max(intervals_.back().second, iv.second);
    else
      intervals_.push_back(iv);
  }
}

bool IntervalSet::contains(double x) const {
  for (const auto& [lo, hi] : intervals_)
    if (x >= lo && x <= hi) return true;
  return false;
}

double IntervalSet::length() const {
  double total = 0.0;
  for (const auto& [lo, hi] : intervals_) total += hi - lo;
  return total;
}

namespace {

void check_weights(const std::vector<double>& w, const char* what) {
  if (w.empty()) throw std::invalid_argument(std::string(what) + ": needs at least one cell");
  double sum = 0.0;
  for (double v : w) {
    if (!(v >= 0.0)) throw std::invalid_argument(std::string(what) + ": negative mass");
    sum += v;
  }
  if (std::abs(sum - 1.0) > kMassTolerance)
    throw std::invalid_argument(std::string(what) + ": masses must sum to 1");
}

double overlap(double a0, double a1, double b0, double b1) {
  return std::max(0.0, std::min(a1, b1) - std::max(a0, b0));
}

}  // namespace

Grid1D::Grid1D(std::vector<double> weights) : weights_(std::move(weights)) {
  check_weights(weights_, "Grid1D");
}

Grid1D Grid1D::uniform(int n_cells) {
  if (n_cells <= 0) throw std::invalid_argument("Grid1D::uniform: n_cells must be positive");
  return Grid1D(std::vector<double>(n_cells, 1.0 / n_cells));
}

int Grid1D::cell_index(double x) const {
  const int n = n_cells();
  const int i = static_cast<int>(std::floor(x * n));
  return std::clamp(i, 0, n - 1);
}

double Grid1D::measure(double lo, double hi) const {
  lo = std::max(lo, 0.0);
  hi = std::min(hi, 1.0);
  if (lo >= hi) return 0.0;
  const int n = n_cells();
  double total = 0.0;
  const int first = std::clamp(static_cast<int>(std::floor(lo * n)), 0, n - 1);
  const int last = std::clamp(static_cast<int>(std::ceil(hi * n)) - 1, 0, n - 1);
  for (int i = first; i <= last; ++i) {
    const double ov = overlap(cell_left(i), cell_right(i), lo, hi);
    if (ov > 0.0) total += weights_[i] * ov * n;
  }
  return total;
}

double Grid1D::measure(const IntervalSet& set) const {
  double total = 0.0;
  for (const auto& [lo, hi] : set.intervals()) total += measure(lo, hi);
  return total;
}

Cdf1D Grid1D::cdf() const {
  const int n = n_cells();
  std::vector<double> knots(n + 1), values(n + 1);
  double acc = 0.0;
  knots[0] = 0.0;
  values[0] = 0.0;
  for (int i = 0; i < n; ++i) {
    acc += weights_[i];
    knots[i + 1] = cell_right(i);
    values[i + 1] = acc;
  }
  values[n] = 1.0;  // absorb rounding in the last knot
  return Cdf1D(std::move(knots), std::move(values), Cdf1D::Mode::linear);
}

double Grid1D::sample(RngStream& rng) const {
  double u = rng.uniform();
  const int n = n_cells();
  for (int i = 0; i < n; ++i) {
    if (u < weights_[i] || i == n - 1) {
      const double frac = weights_[i] > 0.0 ? std::min(u / weights_[i], 1.0) : rng.uniform();
      return cell_left(i) + frac / n;
    }
    u -= weights_[i];
  }
  return 1.0;  // unreachable
}

Grid2D::Grid2D(int k_x, int k_y, std::vector<double> mass_row_major)
    : k_x_(k_x), k_y_(k_y), mass_(std::move(mass_row_major)) {
  if (k_x_ <= 0 || k_y_ <= 0) throw std::invalid_argument("Grid2D: resolutions must be positive");
  if (mass_.size() != static_cast<std::size_t>(k_x_) * k_y_)
    throw std::invalid_argument("Grid2D: mass vector has wrong size");
  check_weights(mass_, "Grid2D");
}

Grid2D Grid2D::uniform(int k_x, int k_y) {
  return Grid2D(k_x, k_y,
                std::vector<double>(static_cast<std::size_t>(k_x) * k_y,
                                    1.0 / (static_cast<double>(k_x) * k_y)));
}

Grid2D Grid2D::product(const Grid1D& mu, const Grid1D& nu) {
  std::vector<double> mass(static_cast<std::size_t>(mu.n_cells()) * nu.n_cells());
  for (int ix = 0; ix < mu.n_cells(); ++ix)
    for (int iy = 0; iy < nu.n_cells(); ++iy)
      mass[static_cast<std::size_t>(ix) * nu.n_cells() + iy] = mu.weight(ix) * nu.weight(iy);
  return Grid2D(mu.n_cells(), nu.n_cells(), std::move(mass));
}

double Grid2D::rect_prob(const Rect& r) const {
  double total = 0.0;
  for (int ix = 0; ix < k_x_; ++ix) {
    const double ox = overlap(static_cast<double>(ix) / k_x_, static_cast<double>(ix + 1) / k_x_,
                              r.x0, r.x1);
    if (ox <= 0.0) continue;
    for (int iy = 0; iy < k_y_; ++iy) {
      const double oy = overlap(static_cast<double>(iy) / k_y_, static_cast<double>(iy + 1) / k_y_,
                                r.y0, r.y1);
      if (oy <= 0.0) continue;
      total += mass_[idx(ix, iy)] * ox * k_x_ * oy * k_y_;
    }
  }
  return total;
}

double Grid2D::block_mass(int k, int j, int h) const {
  if (k <= 0 || k_x_ % k != 0 || k_y_ % k != 0)
    throw std::invalid_argument("Grid2D::block_mass: k must divide both resolutions");
  const int fx = k_x_ / k, fy = k_y_ / k;
  double total = 0.0;
  for (int ix = j * fx; ix < (j + 1) * fx; ++ix)
    for (int iy = h * fy; iy < (h + 1) * fy; ++iy) total += mass_[idx(ix, iy)];
  return total;
}

Grid2D Grid2D::refine(int factor_x, int factor_y) const {
  if (factor_x <= 0 || factor_y <= 0)
    throw std::invalid_argument("Grid2D::refine: factors must be positive");
  const int nx = k_x_ * factor_x, ny = k_y_ * factor_y;
  std::vector<double> mass(static_cast<std::size_t>(nx) * ny);
  const double split = 1.0 / (static_cast<double>(factor_x) * factor_y);
  for (int ix = 0; ix < nx; ++ix)
    for (int iy = 0; iy < ny; ++iy)
      mass[static_cast<std::size_t>(ix) * ny + iy] =
          mass_[idx(ix / factor_x, iy / factor_y)] * split;
  return Grid2D(nx, ny, std::move(mass));
}

Cdf1D::Cdf1D(std::vector<double> knots, std::vector<double> values, Mode mode)
    : knots_(std::move(knots)), values_(std::move(values)), mode_(mode) {
  if (knots_.size() != values_.size() || knots_.empty())
    throw std::invalid_argument("Cdf1D: knots and values must match and be non-empty");
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    if (!(knots_[i] > knots_[i - 1])) throw std::invalid_argument("Cdf1D: knots must increase");
    if (values_[i] < values_[i - 1] - 1e-15)
      throw std::invalid_argument("Cdf1D: values must be non-decreasing");
  }
  if (std::abs(values_.back() - 1.0) > kMassTolerance)
    throw std::invalid_argument("Cdf1D: last value must be 1");
}

Cdf1D Cdf1D::from_atoms(std::vector<double> locations, std::vector<double> weights) {
  if (locations.size() != weights.size() || locations.empty())
    throw std::invalid_argument("Cdf1D::from_atoms: size mismatch");
  std::vector<std::size_t> order(locations.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return locations[a] < locations[b]; });
  std::vector<double> knots, values;
  double acc = 0.0;
  for (std::size_t r : order) {
    acc += weights[r];
    if (!knots.empty() && locations[r] == knots.back())
      values.back() = acc;
    else {
      knots.push_back(locations[r]);
      values.push_back(acc);
    }
  }
  if (std::abs(acc - 1.0) > kMassTolerance)
    throw std::invalid_argument("Cdf1D::from_atoms: weights must sum to 1");
  values.back() = 1.0;
  return Cdf1D(std::move(knots), std::move(values), Mode::step);
}

double Cdf1D::operator()(double t) const {
  if (t < knots_.front()) return mode_ == Mode::linear ? 0.0 : 0.0;
  if (t >= knots_.back()) return 1.0;
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
  const std::size_t j = static_cast<std::size_t>(it - knots_.begin());  // knots_[j-1] <= t < knots_[j]
  if (mode_ == Mode::step) return j == 0 ? 0.0 : values_[j - 1];
  if (j == 0) return 0.0;
  const double t0 = knots_[j - 1], t1 = knots_[j];
  const double f0 = values_[j - 1], f1 = values_[j];
  return f0 + (f1 - f0) * (t - t0) / (t1 - t0);
}

std::pair<Grid1D, Grid1D> marginals(const Grid2D& p) {
  std::vector<double> row(p.k_x(), 0.0), col(p.k_y(), 0.0);
  for (int ix = 0; ix < p.k_x(); ++ix)
    for (int iy = 0; iy < p.k_y(); ++iy) {
      row[ix] += p.mass(ix, iy);
      col[iy] += p.mass(ix, iy);
    }
  // renormalize rounding dust so the marginals are valid measures
  auto fix = [](std::vector<double>& w) {
    const double s = std::accumulate(w.begin(), w.end(), 0.0);
    for (double& v : w) v /= s;
  };
  fix(row);
  fix(col);
  return {Grid1D(std::move(row)), Grid1D(std::move(col))};
}

double quantile(const Cdf1D& F, double u) {
  if (!(u >= 0.0 && u <= 1.0)) throw std::invalid_argument("quantile: u must lie in [0,1]");
  const auto& knots = F.knots();
  const auto& values = F.values();
  if (u == 0.0) {
    // leftmost support point: where F first becomes positive
    for (std::size_t j = 0; j < values.size(); ++j)
      if (values[j] > 0.0) {
        if (F.mode() == Cdf1D::Mode::step) return knots[j];
        return j == 0 ? knots[0] : knots[j - 1];
      }
    return knots.front();
  }
  // first knot with F >= u
  const auto it = std::lower_bound(values.begin(), values.end(), u);
  if (it == values.end()) return knots.back();
  const std::size_t j = static_cast<std::size_t>(it - values.begin());
  if (F.mode() == Cdf1D::Mode::step) return knots[j];
  if (j == 0) return knots.front();
  const double f0 = values[j - 1], f1 = values[j];
  if (f1 == f0) return knots[j];
  // F is linear on [knots[j-1], knots[j]] and f0 < u <= f1
  return knots[j - 1] + (knots[j] - knots[j - 1]) * (u - f0) / (f1 - f0);
}

Grid2D random_coupling(int k, RngStream& rng, int sinkhorn_iters) {
  if (k <= 0) throw std::invalid_argument("random_coupling: k must be positive");
  const std::size_t n = static_cast<std::size_t>(k) * k;
  std::vector<double> m(n);
  for (double& v : m) v = 0.05 + rng.uniform();  // bounded away from zero
  // Sinkhorn: alternate row/column rescaling toward uniform marginals
  for (int it = 0; it < sinkhorn_iters; ++it) {
    for (int ix = 0; ix < k; ++ix) {
      double s = 0.0;
      for (int iy = 0; iy < k; ++iy) s += m[static_cast<std::size_t>(ix) * k + iy];
      const double scale = 1.0 / (k * s);
      for (int iy = 0; iy < k; ++iy) m[static_cast<std::size_t>(ix) * k + iy] *= scale;
    }
    for (int iy = 0; iy < k; ++iy) {
      double s = 0.0;
      for (int ix = 0; ix < k; ++ix) s += m[static_cast<std::size_t>(ix) * k + iy];
      const double scale = 1.0 / (k * s);
      for (int ix = 0; ix < k; ++ix) m[static_cast<std::size_t>(ix) * k + iy] *= scale;
    }
  }
  double total = std::accumulate(m.begin(), m.end(), 0.0);
  for (double& v : m) v /= total;
  return Grid2D(k, k, std::move(m));
}

}  // namespace frechet
