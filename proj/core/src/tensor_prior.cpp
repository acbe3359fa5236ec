#include "frechet/tensor_prior.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

#include "frechet/rng.hpp"

namespace frechet {

BasisFunction BasisFunction::from_step(StepFunction f) {
  auto shared = std::make_shared<StepFunction>(std::move(f));
  BasisFunction out;
  out.eval = [shared](double x) { return (*shared)(x); };
  out.integral = [shared](double lo, double hi) { return shared->integral(lo, hi); };
  return out;
}

BasisFunction BasisFunction::cosine(int n) {
  if (n < 1) throw std::invalid_argument("BasisFunction::cosine: n must be >= 1");
  const double w = n * std::numbers::pi;
  BasisFunction out;
  out.eval = [w](double x) { return std::cos(w * x); };
  out.integral = [w](double lo, double hi) {
    lo = std::max(lo, 0.0);
    hi = std::min(hi, 1.0);
    if (lo >= hi) return 0.0;
    return (std::sin(w * hi) - std::sin(w * lo)) / w;
  };
  return out;
}

std::vector<BasisPair> haar_basis_pairs(int n) {
  std::vector<BasisPair> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    auto f = BasisFunction::from_step(rademacher_step(i));
    out.push_back(BasisPair{f, f});
  }
  return out;
}

std::vector<BasisPair> cosine_basis_pairs(int n) {
  std::vector<BasisPair> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    auto f = BasisFunction::cosine(i);
    out.push_back(BasisPair{f, f});
  }
  return out;
}

double measure_integral(const BasisFunction& f, const Grid1D& m, double lo, double hi) {
  lo = std::max(lo, 0.0);
  hi = std::min(hi, 1.0);
  if (lo >= hi) return 0.0;
  const int n = m.n_cells();
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const double a = std::max(lo, m.cell_left(i));
    const double b = std::min(hi, m.cell_right(i));
    if (a >= b || m.weight(i) == 0.0) continue;
    // piecewise-uniform density is weight * n on the cell
    total += m.weight(i) * n * f.integral(a, b);
  }
  return total;
}

void validate_basis_pair(const BasisPair& pair, const Grid1D& mu, const Grid1D& nu) {
  constexpr int kProbe = 4096;
  constexpr double kSupTol = 1e-12;
  for (int i = 0; i <= kProbe; ++i) {
    const double x = static_cast<double>(i) / kProbe;
    if (std::abs(pair.g.eval(x)) > 1.0 + kSupTol || std::abs(pair.h.eval(x)) > 1.0 + kSupTol)
      throw std::invalid_argument("BasisPair: function exceeds the unit bound");
  }
  if (std::abs(measure_integral(pair.g, mu, 0.0, 1.0)) > 1e-8 ||
      std::abs(measure_integral(pair.h, nu, 0.0, 1.0)) > 1e-8)
    throw std::invalid_argument("BasisPair: function is not centered under its marginal");
}

CoeffLaw::CoeffLaw(std::vector<Component> components, bool independent)
    : components_(std::move(components)), independent_(independent) {
  double total = 0.0;
  for (const auto& c : components_) {
    if (!(c.weight >= 0.0)) throw std::invalid_argument("CoeffLaw: negative weight");
    if (c.kind == Kind::fixed && std::abs(c.fixed_value) > 1.0)
      throw std::invalid_argument("CoeffLaw: fixed value must lie in [-1,1]");
    total += c.weight;
  }
  if (total > 1.0 + 1e-12)
    throw std::invalid_argument("CoeffLaw: weights must sum to at most 1");
}

CoeffLaw CoeffLaw::scaled_uniform(int n) {
  std::vector<Component> comps;
  for (int i = 1; i <= n; ++i) comps.push_back({std::ldexp(1.0, -i), Kind::uniform, 0.0});
  return CoeffLaw(std::move(comps));
}

CoeffLaw CoeffLaw::scaled_rademacher(int n) {
  std::vector<Component> comps;
  for (int i = 1; i <= n; ++i) comps.push_back({std::ldexp(1.0, -i), Kind::rademacher, 0.0});
  return CoeffLaw(std::move(comps));
}

CoeffLaw CoeffLaw::fixed(std::vector<double> values) {
  std::vector<Component> comps;
  double total = 0.0;
  for (double v : values) {
    total += std::abs(v);
    comps.push_back({std::abs(v), Kind::fixed, v == 0.0 ? 0.0 : (v > 0.0 ? 1.0 : -1.0)});
  }
  if (total > 1.0 + 1e-12)
    throw std::invalid_argument("CoeffLaw::fixed: |values| must sum to at most 1");
  return CoeffLaw(std::move(comps));
}

std::vector<double> CoeffLaw::sample(RngStream& rng) const {
  std::vector<double> u(components_.size());
  for (std::size_t i = 0; i < components_.size(); ++i) {
    const auto& c = components_[i];
    double v = 0.0;
    switch (c.kind) {
      case Kind::uniform: v = rng.uniform(-1.0, 1.0); break;
      case Kind::rademacher: v = rng.uniform() < 0.5 ? -1.0 : 1.0; break;
      case Kind::fixed: v = c.fixed_value; break;
    }
    u[i] = c.weight * v;
  }
  return u;
}

std::complex<double> CoeffLaw::char_fn(std::size_t n, double t) const {
  const auto& c = components_.at(n);
  const double s = c.weight * t;
  switch (c.kind) {
    case Kind::uniform:
      return s == 0.0 ? std::complex<double>(1.0, 0.0)
                      : std::complex<double>(std::sin(s) / s, 0.0);
    case Kind::rademacher:
      return {std::cos(s), 0.0};
    case Kind::fixed:
      return std::polar(1.0, s * c.fixed_value);
  }
  return {1.0, 0.0};
}

TensorDensity::TensorDensity(std::vector<BasisPair> basis, std::vector<double> coeffs,
                             Grid1D mu, Grid1D nu)
    : basis_(std::move(basis)), coeffs_(std::move(coeffs)),
      mu_(std::move(mu)), nu_(std::move(nu)) {
  if (basis_.size() != coeffs_.size())
    throw std::invalid_argument("TensorDensity: basis/coefficient size mismatch");
  double total = 0.0;
  for (double u : coeffs_) total += std::abs(u);
  if (total > 1.0 + 1e-12)
    throw std::invalid_argument("TensorDensity: sum |U_n| must be at most 1");
  for (const auto& pair : basis_) validate_basis_pair(pair, mu_, nu_);
}

double TensorDensity::density(double x, double y) const {
  double f = 1.0;
  for (std::size_t n = 0; n < basis_.size(); ++n)
    f += coeffs_[n] * basis_[n].g.eval(x) * basis_[n].h.eval(y);
  return f;
}

double TensorDensity::rectangle_prob(const Rect& H) const {
  double p = mu_.measure(H.x0, H.x1) * nu_.measure(H.y0, H.y1);
  for (std::size_t n = 0; n < basis_.size(); ++n) {
    if (coeffs_[n] == 0.0) continue;
    p += coeffs_[n] * measure_integral(basis_[n].g, mu_, H.x0, H.x1) *
         measure_integral(basis_[n].h, nu_, H.y0, H.y1);
  }
  return p;
}

TensorPrior::TensorPrior(std::vector<BasisPair> basis, CoeffLaw law, Grid1D mu, Grid1D nu)
    : basis_(std::move(basis)), law_(std::move(law)),
      mu_(std::move(mu)), nu_(std::move(nu)) {
  if (basis_.size() != law_.size())
    throw std::invalid_argument("TensorPrior: basis and coefficient law sizes differ");
  for (const auto& pair : basis_) validate_basis_pair(pair, mu_, nu_);
}

TensorDensity TensorPrior::sample(RngStream& rng) const {
  return TensorDensity(basis_, law_.sample(rng), mu_, nu_);
}

double TensorPrior::basis_rect_integral(std::size_t n, const Rect& H) const {
  return measure_integral(basis_[n].g, mu_, H.x0, H.x1) *
         measure_integral(basis_[n].h, nu_, H.y0, H.y1);
}

double TensorPrior::lambda(const Rect& H) const {
  return mu_.measure(H.x0, H.x1) * nu_.measure(H.y0, H.y1);
}

std::complex<double> TensorPrior::char_function(const Rect& H, double t) const {
  if (!law_.independent())
    throw std::invalid_argument("char_function: requires independent coefficients");
  std::complex<double> out = std::polar(1.0, lambda(H) * t);
  for (std::size_t n = 0; n < basis_.size(); ++n)
    out *= law_.char_fn(n, basis_rect_integral(n, H) * t);
  return out;
}

}  // namespace frechet
