#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace frechet {

/// Seeded random stream with counter-based splitting.
///
/// Every source of randomness in the library is an RngStream derived from a
/// single master seed through named or indexed substreams. Substream
/// derivation is a pure function of (seed, id), so parallel loops that give
/// each task its own substream produce results independent of scheduling.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : seed_(seed), eng_(mix(seed)) {}

  std::uint64_t seed() const { return seed_; }

  /// Child stream for task `id`; independent of calls made on the parent.
  RngStream substream(std::uint64_t id) const {
    return RngStream(mix(seed_ + 0x9e3779b97f4a7c15ULL * (id + 1)));
  }
  RngStream substream(std::string_view label) const {
    return substream(fnv1a(label));
  }

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform on [0,1) with 53 random bits.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform on {0,...,n-1}.
  std::uint64_t uniform_index(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_index: n must be positive");
    // rejection to avoid modulo bias
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = eng_();
    while (v >= limit) v = eng_();
    return v % n;
  }

  double normal() {
    std::normal_distribution<double> d(0.0, 1.0);
    return d(eng_);
  }

  /// Gamma with the given shape and unit scale; shape 0 gives the point mass at 0.
  double gamma(double shape) {
    if (shape < 0.0) throw std::invalid_argument("gamma: shape must be >= 0");
    if (shape == 0.0) return 0.0;
    std::gamma_distribution<double> d(shape, 1.0);
    return d(eng_);
  }

  double beta(double a, double b) {
    if (a <= 0.0 || b <= 0.0) throw std::invalid_argument("beta: parameters must be positive");
    for (int attempt = 0; attempt < 64; ++attempt) {
      const double x = gamma(a), y = gamma(b);
      if (x + y > 0.0) return x / (x + y);
    }
    throw std::runtime_error("beta: degenerate gamma draws");
  }

  /// Dirichlet by gamma normalization; entries with shape 0 are exactly 0.
  std::vector<double> dirichlet(const std::vector<double>& alpha) {
    std::vector<double> out(alpha.size());
    for (int attempt = 0; attempt < 64; ++attempt) {
      double sum = 0.0;
      for (std::size_t i = 0; i < alpha.size(); ++i) {
        out[i] = gamma(alpha[i]);
        sum += out[i];
      }
      if (sum > 0.0) {
        for (double& v : out) v /= sum;
        return out;
      }
    }
    throw std::runtime_error("dirichlet: all gamma draws were zero");
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    // splitmix64 finalizer
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  static std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ULL;
    }
    return h;
  }

  std::uint64_t seed_;
  std::mt19937_64 eng_;
};

}  // namespace frechet
