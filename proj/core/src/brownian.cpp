#include "frechet/brownian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "frechet/grid.hpp"
#include "frechet/rng.hpp"

namespace frechet {

PathMap PathMap::tanh_half() { return {"tanh", [](double x) { return 0.5 * std::tanh(x); }}; }
PathMap PathMap::sin_half() { return {"sin", [](double x) { return 0.5 * std::sin(x); }}; }
PathMap PathMap::clamp_unit() {
  return {"clamp", [](double x) { return std::clamp(x + 0.5, 0.0, 1.0); }};
}
PathMap PathMap::step_unit() {
  return {"step", [](double x) { return x > 0.0 ? 1.0 : 0.0; }};
}

PathMap PathMap::by_name(const std::string& name) {
  if (name == "tanh") return tanh_half();
  if (name == "sin") return sin_half();
  if (name == "clamp") return clamp_unit();
  if (name == "step") return step_unit();
  throw std::invalid_argument("unknown path map: " + name);
}

namespace {

void check_admissible(const PathMap& phi) {
  constexpr double tol = 1e-12;
  bool centered_band = true;  // [-1/2, 1/2]
  bool unit_band = true;      // [0, 1]
  for (int i = 0; i <= 4000; ++i) {
    const double x = -8.0 + 16.0 * i / 4000.0;
    const double v = phi.fn(x);
    if (v < -0.5 - tol || v > 0.5 + tol) centered_band = false;
    if (v < -tol || v > 1.0 + tol) unit_band = false;
  }
  if (!centered_band && !unit_band)
    throw std::invalid_argument("brownian_density: phi must map into [-1/2,1/2] or [0,1]");
}

double lerp_path(const std::vector<double>& w, double t) {
  const int n = static_cast<int>(w.size()) - 1;
  if (t <= 0.0) return w.front();
  if (t >= 1.0) return w.back();
  const double s = t * n;
  const int j = std::min(static_cast<int>(s), n - 1);
  const double frac = s - j;
  return w[j] + frac * (w[j + 1] - w[j]);
}

}  // namespace

BrownianDensity::BrownianDensity(PathMap phi, std::vector<double> w1, std::vector<double> w2)
    : phi_(std::move(phi)), w1_(std::move(w1)), w2_(std::move(w2)) {
  if (w1_.size() != w2_.size() || w1_.size() < 2)
    throw std::invalid_argument("BrownianDensity: paths must share at least two nodes");
  const std::size_t m = w1_.size();
  pv1_.resize(m);
  pv2_.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    pv1_[j] = phi_.fn(w1_[j]);
    pv2_[j] = phi_.fn(w2_[j]);
  }
  c1_ = trapezoid_prefix(pv1_, 1.0);
  c2_ = trapezoid_prefix(pv2_, 1.0);
}

double BrownianDensity::trapezoid_prefix(const std::vector<double>& vals, double t) const {
  const int n = static_cast<int>(vals.size()) - 1;
  t = std::clamp(t, 0.0, 1.0);
  const double s = t * n;
  const int full = std::min(static_cast<int>(s), n);
  double acc = 0.0;
  for (int j = 0; j < full; ++j) acc += 0.5 * (vals[j] + vals[j + 1]);
  acc /= n;
  const double frac = s - full;
  if (full < n && frac > 0.0) {
    // integral of the linear interpolant over the partial step
    const double v0 = vals[full];
    const double v1 = vals[full] + frac * (vals[full + 1] - vals[full]);
    acc += 0.5 * (v0 + v1) * frac / n;
  }
  return acc;
}

double BrownianDensity::g(double t) const { return phi_.fn(lerp_path(w1_, t)) - c1_; }
double BrownianDensity::h(double t) const { return phi_.fn(lerp_path(w2_, t)) - c2_; }

double BrownianDensity::occupation(int which, double t) const {
  if (which != 1 && which != 2) throw std::invalid_argument("occupation: which must be 1 or 2");
  if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("occupation: t must lie in [0,1]");
  const auto& pv = which == 1 ? pv1_ : pv2_;
  const double c = which == 1 ? c1_ : c2_;
  return 0.5 * (trapezoid_prefix(pv, t) - t * c);
}

double BrownianDensity::rectangle_prob(double a, double b) const {
  if (!(a >= 0.0 && a <= 1.0 && b >= 0.0 && b <= 1.0))
    throw std::invalid_argument("rectangle_prob: corner must lie in the unit square");
  // int_0^a g = trapezoid_prefix(pv1, a) - a*c1 = 2 U_1(a), likewise for h
  const double ig = trapezoid_prefix(pv1_, a) - a * c1_;
  const double ih = trapezoid_prefix(pv2_, b) - b * c2_;
  return a * b + ig * ih;
}

double BrownianDensity::rectangle_prob(const Rect& H) const {
  // inclusion-exclusion from the corner function
  return rectangle_prob(H.x1, H.y1) - rectangle_prob(H.x0, H.y1) -
         rectangle_prob(H.x1, H.y0) + rectangle_prob(H.x0, H.y0);
}

BrownianDensity brownian_density(const PathMap& phi, int n_steps, RngStream& rng) {
  if (n_steps < 1000)
    throw std::invalid_argument("brownian_density: n_steps must be at least 1000");
  check_admissible(phi);
  const double sd = 1.0 / std::sqrt(static_cast<double>(n_steps));
  std::vector<double> w1(n_steps + 1), w2(n_steps + 1);
  w1[0] = w2[0] = 0.0;
  for (int j = 1; j <= n_steps; ++j) w1[j] = w1[j - 1] + sd * rng.normal();
  for (int j = 1; j <= n_steps; ++j) w2[j] = w2[j - 1] + sd * rng.normal();
  return BrownianDensity(phi, std::move(w1), std::move(w2));
}

double quadrature_rectangle_prob(const BrownianDensity& f, double a, double b,
                                 int subdivisions_per_step) {
  if (!(a >= 0.0 && a <= 1.0 && b >= 0.0 && b <= 1.0))
    throw std::invalid_argument("quadrature_rectangle_prob: corner outside the unit square");
  if (subdivisions_per_step < 1)
    throw std::invalid_argument("quadrature_rectangle_prob: need at least one subdivision");
  // Two-point Gauss on m equal subintervals of [0,len]; m is chosen odd so
  // the quadrature nodes never coincide with the path nodes.
  const auto integrate = [&](double len, auto&& fn) {
    if (len <= 0.0) return 0.0;
    int m = static_cast<int>(std::ceil(len * f.n_steps() * subdivisions_per_step));
    m = std::max(m, 16) | 1;
    const double hstep = len / m;
    const double off = 0.5 / std::sqrt(3.0);
    double acc = 0.0;
    for (int i = 0; i < m; ++i) {
      const double mid = (i + 0.5) * hstep;
      acc += fn(mid - off * hstep) + fn(mid + off * hstep);
    }
    return acc * hstep * 0.5;
  };
  const double ig = integrate(a, [&](double t) { return f.g(t); });
  const double ih = integrate(b, [&](double t) { return f.h(t); });
  return a * b + ig * ih;
}

}  // namespace frechet
