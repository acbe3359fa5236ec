#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "frechet/checkerboard.hpp"
#include "frechet/grid.hpp"
#include "frechet/parallel.hpp"
#include "frechet/rng.hpp"

namespace frechet {

/// Raised when the normalizing integral of the Bayes formula vanishes:
/// no prior draw assigns positive likelihood to the data.
struct zero_evidence_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Observation {
  double x, y;
  Observation(double x_, double y_) : x(x_), y(y_) {
    if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0))
      throw std::invalid_argument("Observation: coordinates must lie in [0,1]");
  }
};

/// Particle representation of a posterior: prior draws with normalized
/// weights proportional to the data likelihood.
template <class Draw>
struct WeightedPosterior {
  struct Particle {
    Draw value;
    double log_like;  // unnormalized log likelihood of the data
    double weight;    // normalized
  };
  std::vector<Particle> particles;
  double evidence = 0.0;  // mean unnormalized likelihood
  double ess = 0.0;       // effective sample size 1 / sum w^2
};

/// Importance-sampling posterior: draws n_particles from the prior and
/// weights each by the product likelihood of the data. Deterministic for a
/// fixed seed regardless of the thread count (one substream per particle).
template <class Sampler, class DensityFn>
auto is_posterior(Sampler&& sample_prior, DensityFn&& density,
                  const std::vector<Observation>& data, int n_particles, RngStream rng,
                  unsigned threads = 1) {
  using Draw = decltype(sample_prior(rng));
  if (n_particles < 1000)
    throw std::invalid_argument("is_posterior: need at least 1000 particles");
  WeightedPosterior<Draw> post;
  post.particles.reserve(static_cast<std::size_t>(n_particles));
  for (int i = 0; i < n_particles; ++i) {
    RngStream stream = rng.substream("particle").substream(static_cast<std::uint64_t>(i));
    post.particles.push_back({sample_prior(stream), 0.0, 0.0});
  }
  std::vector<double> log_likes(static_cast<std::size_t>(n_particles), 0.0);
  parallel_for(static_cast<std::size_t>(n_particles), threads, [&](std::size_t i) {
    double ll = 0.0;
    for (const auto& z : data) {
      const double f = density(post.particles[i].value, z);
      if (!(f >= 0.0)) throw std::invalid_argument("is_posterior: negative density");
      ll += f > 0.0 ? std::log(f) : -std::numeric_limits<double>::infinity();
    }
    log_likes[i] = ll;
  });
  double max_ll = -std::numeric_limits<double>::infinity();
  for (double ll : log_likes) max_ll = std::max(max_ll, ll);
  if (!std::isfinite(max_ll)) throw zero_evidence_error("is_posterior: all particle weights are zero");
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n_particles; ++i) {
    const double w = std::exp(log_likes[i] - max_ll);
    post.particles[i].log_like = log_likes[i];
    post.particles[i].weight = w;
    sum += w;
  }
  for (auto& p : post.particles) {
    p.weight /= sum;
    sum_sq += p.weight * p.weight;
  }
  post.evidence = std::exp(max_ll) * sum / n_particles;
  post.ess = 1.0 / sum_sq;
  return post;
}

/// Exact conjugate expansion of the checkerboard posterior: a finite
/// mixture of Dirichlet laws over the simplex, one component per
/// permutation count vector.
class DirichletMixturePosterior {
 public:
  struct Component {
    std::vector<double> alpha;
    double weight;
  };

  DirichletMixturePosterior(int k, std::vector<std::vector<int>> perms,
                            std::vector<Component> components, double evidence);

  int k() const { return k_; }
  const std::vector<std::vector<int>>& perms() const { return perms_; }
  const std::vector<Component>& components() const { return components_; }
  double evidence() const { return evidence_; }

  /// Posterior mean of the simplex weights.
  std::vector<double> mean_weights() const;
  /// Posterior mean of P_f(H) (linear in the weights, so exact).
  double predictive(const Rect& H) const;

 private:
  int k_;
  std::vector<std::vector<int>> perms_;
  std::vector<Component> components_;
  double evidence_;
};

/// Applies the Bayes formula to a checkerboard prior (perms, Dir(alpha)):
/// the product likelihood expands into Dirichlet components indexed by how
/// many observations each permutation absorbs. Throws zero_evidence_error
/// if some observation lies outside every permutation band.
DirichletMixturePosterior exact_checkerboard_posterior(
    int k, const std::vector<std::vector<int>>& perms, const std::vector<double>& alpha,
    const std::vector<Observation>& data);

/// Posterior-mean rectangle probability of a particle posterior.
template <class Draw, class RectFn>
double predictive(const WeightedPosterior<Draw>& post, const Rect& H, RectFn&& rect_prob) {
  double total = 0.0;
  for (const auto& p : post.particles) total += p.weight * rect_prob(p.value, H);
  return total;
}

inline double predictive(const DirichletMixturePosterior& post, const Rect& H) {
  return post.predictive(H);
}

/// Draws a prior realization and n conditionally i.i.d. observations.
template <class Sampler, class PointFn>
auto sample_exchangeable(Sampler&& sample_prior, PointFn&& sample_point, int n, RngStream rng) {
  using Draw = decltype(sample_prior(rng));
  if (n < 0) throw std::invalid_argument("sample_exchangeable: n must be non-negative");
  RngStream prior_stream = rng.substream("prior");
  Draw draw = sample_prior(prior_stream);
  std::vector<Observation> data;
  data.reserve(static_cast<std::size_t>(n));
  RngStream data_stream = rng.substream("data");
  for (int i = 0; i < n; ++i) {
    RngStream point_stream = data_stream.substream(static_cast<std::uint64_t>(i));
    data.push_back(sample_point(draw, point_stream));
  }
  return std::make_pair(std::move(draw), std::move(data));
}

/// Exact sampler for checkerboard mixtures.
std::vector<Observation> sample_points(const CheckerboardMixture& mix, int n, RngStream rng);

/// Rejection sampler for densities bounded by 2 with respect to mu x nu
/// (valid whenever sum |U_n| <= 1). Throws if the acceptance rate drops
/// below 10% after warm-up, which signals an invariant violation.
template <class DensityFn>
std::vector<Observation> rejection_sample_points(DensityFn&& density, const Grid1D& mu,
                                                 const Grid1D& nu, int n, RngStream rng) {
  std::vector<Observation> out;
  out.reserve(static_cast<std::size_t>(n));
  long proposals = 0, accepts = 0;
  while (static_cast<int>(out.size()) < n) {
    const double x = mu.sample(rng);
    const double y = nu.sample(rng);
    const double f = density(x, y);
    if (!(f >= 0.0) || f > 2.0 + 1e-9)
      throw std::runtime_error("rejection_sample_points: density outside [0,2]");
    ++proposals;
    if (rng.uniform() * 2.0 <= f) {
      ++accepts;
      out.emplace_back(x, y);
    }
    if (proposals >= 500 && accepts * 10 < proposals)
      throw std::runtime_error("rejection_sample_points: acceptance rate below 10%");
  }
  return out;
}

/// Ratio-estimator standard error of a weighted posterior mean.
double weighted_mean_se(const std::vector<double>& values,
                        const std::vector<double>& norm_weights);

}  // namespace frechet
