#include "frechet/checkerboard.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "frechet/rng.hpp"

namespace frechet {

namespace {

void check_permutation(const std::vector<int>& sigma, int k) {
  if (static_cast<int>(sigma.size()) != k)
    throw std::invalid_argument("permutation has wrong length");
  std::vector<char> seen(k, 0);
  for (int v : sigma) {
    if (v < 0 || v >= k || seen[v]) throw std::invalid_argument("not a permutation");
    seen[v] = 1;
  }
}

int cell_of(double x, int k) {
  const int i = static_cast<int>(std::floor(x * k));
  return std::clamp(i, 0, k - 1);
}

// m(I_{h+1} ∩ [0,b]) for 0-based h: clamp(b - h/k, 0, 1/k)
Rational overlap_prefix(const Rational& b, int h, int k) {
  Rational v = b - Rational(h, k);
  if (v < 0) return Rational(0);
  const Rational cell(1, k);
  return v > cell ? cell : v;
}

}  // namespace

PermDensity::PermDensity(int k_, std::vector<int> sigma_) : k(k_), sigma(std::move(sigma_)) {
  if (k <= 0) throw std::invalid_argument("PermDensity: k must be positive");
  check_permutation(sigma, k);
}

bool PermDensity::in_support(double x, double y) const {
  return sigma[cell_of(x, k)] == cell_of(y, k);
}

CheckerboardMixture::CheckerboardMixture(int k, std::vector<std::vector<int>> perms,
                                         std::vector<double> weights)
    : k_(k), perms_(std::move(perms)), weights_(std::move(weights)) {
  if (k_ <= 0) throw std::invalid_argument("CheckerboardMixture: k must be positive");
  if (perms_.empty() || perms_.size() != weights_.size())
    throw std::invalid_argument("CheckerboardMixture: perms/weights size mismatch");
  std::set<std::vector<int>> distinct;
  for (const auto& s : perms_) {
    check_permutation(s, k_);
    if (!distinct.insert(s).second)
      throw std::invalid_argument("CheckerboardMixture: permutations must be distinct");
  }
  double sum = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0)) throw std::invalid_argument("CheckerboardMixture: negative weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > kMassTolerance)
    throw std::invalid_argument("CheckerboardMixture: weights must sum to 1");
}

Rational CheckerboardMixture::rectangle_prob_exact(const Rational& a, const Rational& b) const {
  if (a < 0 || a > 1 || b < 0 || b > 1)
    throw std::invalid_argument("rectangle_prob: corner must lie in the unit square");
  const Rational ka = a * k_;
  const BigInt fl = rational_floor(ka);
  const int full = static_cast<int>(fl);
  const Rational partial = ka - Rational(fl);
  Rational total(0);
  for (std::size_t i = 0; i < perms_.size(); ++i) {
    const auto& sigma = perms_[i];
    Rational term(0);
    for (int j = 0; j < full; ++j) term += overlap_prefix(b, sigma[j], k_);
    if (full < k_ && partial != 0) term += partial * overlap_prefix(b, sigma[full], k_);
    total += Rational(weights_[i]) * term;
  }
  return total;
}

double CheckerboardMixture::rectangle_prob(double a, double b) const {
  return rectangle_prob_exact(Rational(a), Rational(b)).convert_to<double>();
}

double CheckerboardMixture::rectangle_prob(const Rect& H) const {
  const Rational v = rectangle_prob_exact(Rational(H.x1), Rational(H.y1)) -
                     rectangle_prob_exact(Rational(H.x0), Rational(H.y1)) -
                     rectangle_prob_exact(Rational(H.x1), Rational(H.y0)) +
                     rectangle_prob_exact(Rational(H.x0), Rational(H.y0));
  return v.convert_to<double>();
}

double CheckerboardMixture::density(double x, double y) const {
  const int jx = cell_of(x, k_), jy = cell_of(y, k_);
  double d = 0.0;
  for (std::size_t i = 0; i < perms_.size(); ++i)
    if (perms_[i][jx] == jy) d += weights_[i];
  return d * k_;
}

CheckerboardDensity CheckerboardMixture::to_matrix() const {
  std::vector<Rational> d(static_cast<std::size_t>(k_) * k_, Rational(0));
  for (std::size_t i = 0; i < perms_.size(); ++i) {
    const Rational w = Rational(weights_[i]) * k_;
    for (int j = 0; j < k_; ++j) d[static_cast<std::size_t>(j) * k_ + perms_[i][j]] += w;
  }
  return CheckerboardDensity(k_, std::move(d));
}

std::pair<double, double> CheckerboardMixture::sample_point(RngStream& rng) const {
  double u = rng.uniform();
  std::size_t comp = perms_.size() - 1;
  for (std::size_t i = 0; i < perms_.size(); ++i) {
    if (u < weights_[i]) {
      comp = i;
      break;
    }
    u -= weights_[i];
  }
  const int j = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(k_)));
  const double x = (j + rng.uniform()) / k_;
  const double y = (perms_[comp][j] + rng.uniform()) / k_;
  return {x, y};
}

CheckerboardDensity::CheckerboardDensity(int k, std::vector<Rational> d_row_major)
    : k_(k), d_(std::move(d_row_major)) {
  if (k_ <= 0) throw std::invalid_argument("CheckerboardDensity: k must be positive");
  if (d_.size() != static_cast<std::size_t>(k_) * k_)
    throw std::invalid_argument("CheckerboardDensity: matrix has wrong size");
  const Rational tol = Rational(1, 1000000000);  // 1e-9, absorbs projection dust
  for (int j = 0; j < k_; ++j) {
    Rational row(0), col(0);
    for (int h = 0; h < k_; ++h) {
      if (d_[static_cast<std::size_t>(j) * k_ + h] < 0)
        throw std::invalid_argument("CheckerboardDensity: negative entry");
      row += d_[static_cast<std::size_t>(j) * k_ + h];
      col += d_[static_cast<std::size_t>(h) * k_ + j];
    }
    if (abs(row - k_) > tol * k_ || abs(col - k_) > tol * k_)
      throw std::invalid_argument(
          "CheckerboardDensity: row/column averages must equal 1 (not a coupling density)");
  }
}

CheckerboardDensity CheckerboardDensity::from_doubles(int k, const std::vector<double>& d) {
  std::vector<Rational> r(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) r[i] = Rational(d[i]);
  return CheckerboardDensity(k, std::move(r));
}

double CheckerboardDensity::d(int j, int h) const {
  return d_[static_cast<std::size_t>(j) * k_ + h].convert_to<double>();
}

const Rational& CheckerboardDensity::d_exact(int j, int h) const {
  return d_[static_cast<std::size_t>(j) * k_ + h];
}

double CheckerboardDensity::density(double x, double y) const {
  return d(cell_of(x, k_), cell_of(y, k_));
}

Rational CheckerboardDensity::rectangle_prob_exact(const Rational& a, const Rational& b) const {
  if (a < 0 || a > 1 || b < 0 || b > 1)
    throw std::invalid_argument("rectangle_prob: corner must lie in the unit square");
  Rational total(0);
  for (int j = 0; j < k_; ++j) {
    const Rational ox = overlap_prefix(a, j, k_);
    if (ox == 0) continue;
    for (int h = 0; h < k_; ++h) {
      const Rational oy = overlap_prefix(b, h, k_);
      if (oy == 0) continue;
      total += d_[static_cast<std::size_t>(j) * k_ + h] * ox * oy;
    }
  }
  return total;
}

double CheckerboardDensity::rectangle_prob(double a, double b) const {
  return rectangle_prob_exact(Rational(a), Rational(b)).convert_to<double>();
}

double CheckerboardDensity::rectangle_prob(const Rect& H) const {
  const Rational v = rectangle_prob_exact(Rational(H.x1), Rational(H.y1)) -
                     rectangle_prob_exact(Rational(H.x0), Rational(H.y1)) -
                     rectangle_prob_exact(Rational(H.x1), Rational(H.y0)) +
                     rectangle_prob_exact(Rational(H.x0), Rational(H.y0));
  return v.convert_to<double>();
}

Grid2D CheckerboardDensity::to_grid(int resolution) const {
  if (resolution < k_ || resolution % k_ != 0)
    throw std::invalid_argument("CheckerboardDensity::to_grid: resolution must be a multiple of k");
  const int f = resolution / k_;
  std::vector<double> mass(static_cast<std::size_t>(resolution) * resolution);
  const Rational cell_area(1, static_cast<long long>(resolution) * resolution);
  for (int ix = 0; ix < resolution; ++ix)
    for (int iy = 0; iy < resolution; ++iy)
      mass[static_cast<std::size_t>(ix) * resolution + iy] =
          (d_[static_cast<std::size_t>(ix / f) * k_ + iy / f] * cell_area).convert_to<double>();
  // absorb conversion dust
  const double sum = std::accumulate(mass.begin(), mass.end(), 0.0);
  for (double& v : mass) v /= sum;
  return Grid2D(resolution, resolution, std::move(mass));
}

CheckerboardDensity project_coupling(const Grid2D& p, int k) {
  if (k <= 0) throw std::invalid_argument("project_coupling: k must be positive");
  const auto [mx, my] = marginals(p);
  for (int i = 0; i < mx.n_cells(); ++i)
    if (std::abs(mx.weight(i) - 1.0 / mx.n_cells()) > 1e-9)
      throw std::invalid_argument("project_coupling: first marginal is not uniform");
  for (int i = 0; i < my.n_cells(); ++i)
    if (std::abs(my.weight(i) - 1.0 / my.n_cells()) > 1e-9)
      throw std::invalid_argument("project_coupling: second marginal is not uniform");
  std::vector<Rational> d(static_cast<std::size_t>(k) * k);
  const Rational k2 = Rational(k) * k;
  for (int j = 0; j < k; ++j)
    for (int h = 0; h < k; ++h) {
      const double mass = p.rect_prob(Rect(static_cast<double>(j) / k, (j + 1.0) / k,
                                           static_cast<double>(h) / k, (h + 1.0) / k));
      d[static_cast<std::size_t>(j) * k + h] = Rational(mass) * k2;
    }
  return CheckerboardDensity(k, std::move(d));
}

std::vector<std::vector<int>> all_permutations(int k) {
  if (k <= 0 || k > 6)
    throw std::invalid_argument("all_permutations: supported for 1 <= k <= 6 only");
  std::vector<int> base(k);
  std::iota(base.begin(), base.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(base);
  } while (std::next_permutation(base.begin(), base.end()));
  return out;
}

CheckerboardMixture sample_mixture(const std::vector<std::vector<int>>& perms, int k,
                                   const std::vector<double>& dirichlet_alphas,
                                   RngStream& rng) {
  if (perms.size() != dirichlet_alphas.size())
    throw std::invalid_argument("sample_mixture: perms/alphas size mismatch");
  for (double a : dirichlet_alphas)
    if (!(a > 0.0)) throw std::invalid_argument("sample_mixture: alphas must be positive");
  return CheckerboardMixture(k, perms, rng.dirichlet(dirichlet_alphas));
}

int RandomKLaw::sample(RngStream& rng) const {
  if (!(success_prob > 0.0 && success_prob < 1.0) || k_max < 1)
    throw std::invalid_argument("RandomKLaw: need 0 < success_prob < 1 and k_max >= 1");
  // truncated geometric by inverse cdf
  const double u = rng.uniform();
  const double q = 1.0 - success_prob;
  const double tail = 1.0 - std::pow(q, k_max);
  const double v = u * tail;
  const int k = 1 + static_cast<int>(std::floor(std::log1p(-v) / std::log(q)));
  return std::clamp(k, 1, k_max);
}

CheckerboardMixture sample_mixture_random_k(const std::vector<double>& dirichlet_alphas,
                                            const RandomKLaw& k_law, RngStream& rng) {
  const int k = k_law.sample(rng);
  double factorial = 1.0;
  for (int i = 2; i <= k && factorial <= 1e6; ++i) factorial *= i;
  std::size_t m = dirichlet_alphas.size();
  if (factorial <= 1e6) m = std::min<std::size_t>(m, static_cast<std::size_t>(factorial));
  std::set<std::vector<int>> chosen;
  std::vector<int> base(k);
  std::iota(base.begin(), base.end(), 0);
  while (chosen.size() < m) {
    std::vector<int> perm = base;
    for (int i = k - 1; i > 0; --i)
      std::swap(perm[i], perm[rng.uniform_index(static_cast<std::uint64_t>(i + 1))]);
    chosen.insert(std::move(perm));
  }
  std::vector<std::vector<int>> perms(chosen.begin(), chosen.end());
  std::vector<double> alphas(dirichlet_alphas.begin(), dirichlet_alphas.begin() + m);
  return sample_mixture(perms, k, alphas, rng);
}

}  // namespace frechet
