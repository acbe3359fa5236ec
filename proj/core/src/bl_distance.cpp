#include "frechet/bl_distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace frechet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMassEps = 1e-15;

struct Point {
  double x, y;
};

// |phi_i| <= 1 together with the Lipschitz constraints is equivalent to
// 1-Lipschitz continuity under the truncated metric min(scale * d, 2),
// because any admissible phi can be recentered into [-1,1].
inline double rho(const Point& a, const Point& b, double scale) {
  const double dx = a.x - b.x, dy = a.y - b.y;
  return std::min(scale * std::sqrt(dx * dx + dy * dy), 2.0);
}

}  // namespace

BlSolution bl_distance_detail(const Grid2D& p, const Grid2D& q, double metric_scale,
                              double gap_tol) {
  if (p.k_x() != q.k_x() || p.k_y() != q.k_y())
    throw std::invalid_argument("bl_distance: measures must live on the same grid");
  if (!(metric_scale > 0.0))
    throw std::invalid_argument("bl_distance: metric_scale must be positive");

  const int kx = p.k_x(), ky = p.k_y();
  const std::size_t n_cells = static_cast<std::size_t>(kx) * ky;

  std::vector<Point> centers(n_cells);
  std::vector<double> residual(n_cells);
  std::vector<int> sources, demands;  // cell indices with positive / negative residual
  for (int ix = 0; ix < kx; ++ix)
    for (int iy = 0; iy < ky; ++iy) {
      const std::size_t c = static_cast<std::size_t>(ix) * ky + iy;
      auto [cx, cy] = p.cell_center(ix, iy);
      centers[c] = {cx, cy};
      residual[c] = p.mass(ix, iy) - q.mass(ix, iy);
      if (residual[c] > kMassEps)
        sources.push_back(static_cast<int>(c));
      else if (residual[c] < -kMassEps)
        demands.push_back(static_cast<int>(c));
    }

  BlSolution out;
  out.phi.assign(n_cells, 0.0);
  if (sources.empty() || demands.empty()) return out;

  const int ns = static_cast<int>(sources.size());
  const int nd = static_cast<int>(demands.size());
  const int nv = ns + nd;  // source-side nodes [0,ns), demand-side [ns,nv)

  std::vector<double> cost(static_cast<std::size_t>(ns) * nd);
  for (int i = 0; i < ns; ++i)
    for (int j = 0; j < nd; ++j)
      cost[static_cast<std::size_t>(i) * nd + j] =
          rho(centers[sources[i]], centers[demands[j]], metric_scale);

  std::vector<double> supply(ns), demand(nd);
  double total_supply = 0.0, total_demand = 0.0;
  for (int i = 0; i < ns; ++i) total_supply += supply[i] = residual[sources[i]];
  for (int j = 0; j < nd; ++j) total_demand += demand[j] = -residual[demands[j]];
  const double target = std::min(total_supply, total_demand);

  std::vector<double> flow(static_cast<std::size_t>(ns) * nd, 0.0);
  std::vector<double> pi(nv, 0.0);
  std::vector<double> dist(nv);
  std::vector<int> parent(nv);
  std::vector<char> settled(nv);

  double shipped = 0.0;
  const int max_aug = 256 * (nv + 4);
  while (shipped < target - 1e-14) {
    // Dijkstra on the residual graph with reduced costs (multi-source from
    // the virtual origin through all sources with remaining supply).
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(parent.begin(), parent.end(), -2);
    std::fill(settled.begin(), settled.end(), 0);
    for (int i = 0; i < ns; ++i)
      if (supply[i] > kMassEps) {
        dist[i] = -pi[i];
        parent[i] = -1;  // fed by the origin
      }
    int goal = -1;
    for (int round = 0; round < nv; ++round) {
      int u = -1;
      double best = kInf;
      for (int v = 0; v < nv; ++v)
        if (!settled[v] && dist[v] < best) {
          best = dist[v];
          u = v;
        }
      if (u < 0) break;
      settled[u] = 1;
      if (u >= ns && demand[u - ns] > kMassEps) {
        goal = u;
        break;
      }
      if (u < ns) {
        // forward arcs to every demand node
        const double base = dist[u] + pi[u];
        const std::size_t row = static_cast<std::size_t>(u) * nd;
        for (int j = 0; j < nd; ++j) {
          const int v = ns + j;
          if (settled[v]) continue;
          const double cand = base + cost[row + j] - pi[v];
          if (cand < dist[v]) {
            dist[v] = cand;
            parent[v] = u;
          }
        }
      } else {
        // backward arcs along positive flows
        const int j = u - ns;
        const double base = dist[u] + pi[u];
        for (int i = 0; i < ns; ++i) {
          if (settled[i]) continue;
          if (flow[static_cast<std::size_t>(i) * nd + j] <= kMassEps) continue;
          const double cand = base - cost[static_cast<std::size_t>(i) * nd + j] - pi[i];
          if (cand < dist[i]) {
            dist[i] = cand;
            parent[i] = u;
          }
        }
      }
    }
    if (goal < 0)
      throw std::logic_error("bl_distance: no augmenting path although flow is unbalanced");

    const double d_goal = dist[goal];
    for (int v = 0; v < nv; ++v) pi[v] += std::min(dist[v], d_goal);

    // bottleneck along the path
    double delta = demand[goal - ns];
    for (int v = goal; parent[v] != -1; v = parent[v]) {
      const int u = parent[v];
      if (u < ns && v >= ns) {
        // forward arc: uncapacitated
      } else {
        delta = std::min(delta, flow[static_cast<std::size_t>(v) * nd + (u - ns)]);
      }
      if (parent[u] == -1) delta = std::min(delta, supply[u]);
    }
    delta = std::min(delta, target - shipped);
    if (!(delta > 0.0))
      throw std::logic_error("bl_distance: zero augmentation step");

    for (int v = goal; parent[v] != -1; v = parent[v]) {
      const int u = parent[v];
      if (u < ns && v >= ns)
        flow[static_cast<std::size_t>(u) * nd + (v - ns)] += delta;
      else
        flow[static_cast<std::size_t>(v) * nd + (u - ns)] -= delta;
      if (parent[u] == -1) supply[u] -= delta;
    }
    demand[goal - ns] -= delta;
    shipped += delta;

    if (++out.augmentations > max_aug)
      throw std::logic_error("bl_distance: augmentation budget exceeded");
  }

  double flow_cost = 0.0;
  for (int i = 0; i < ns; ++i)
    for (int j = 0; j < nd; ++j)
      flow_cost += flow[static_cast<std::size_t>(i) * nd + j] *
                   cost[static_cast<std::size_t>(i) * nd + j];
  out.flow_cost = flow_cost;

  // Primal witness: phi = -pi on support nodes, extended to the remaining
  // cells by the largest 1-Lipschitz minorant and recentered into [-1,1].
  std::vector<char> anchored(n_cells, 0);
  for (int i = 0; i < ns; ++i) {
    out.phi[sources[i]] = -pi[i];
    anchored[sources[i]] = 1;
  }
  for (int j = 0; j < nd; ++j) {
    out.phi[demands[j]] = -pi[ns + j];
    anchored[demands[j]] = 1;
  }
  for (std::size_t c = 0; c < n_cells; ++c) {
    if (anchored[c]) continue;
    double best = kInf;
    for (int i = 0; i < ns; ++i)
      best = std::min(best, out.phi[sources[i]] + rho(centers[c], centers[sources[i]], metric_scale));
    for (int j = 0; j < nd; ++j)
      best = std::min(best, out.phi[demands[j]] + rho(centers[c], centers[demands[j]], metric_scale));
    out.phi[c] = best;
  }
  const auto [mn, mx] = std::minmax_element(out.phi.begin(), out.phi.end());
  const double shift = 0.5 * (*mn + *mx);
  for (double& v : out.phi) v -= shift;

  // Certificate: witness feasibility plus duality gap.
  const double feas_tol = 1e-9;
  for (std::size_t a = 0; a < n_cells; ++a) {
    if (std::abs(out.phi[a]) > 1.0 + feas_tol)
      throw std::logic_error("bl_distance: witness violates the bound constraint");
    for (std::size_t b = a + 1; b < n_cells; ++b)
      if (std::abs(out.phi[a] - out.phi[b]) > rho(centers[a], centers[b], metric_scale) + feas_tol)
        throw std::logic_error("bl_distance: witness violates a Lipschitz constraint");
  }
  double primal = 0.0;
  for (std::size_t c = 0; c < n_cells; ++c) primal += residual[c] * out.phi[c];
  out.value = primal;
  out.gap = flow_cost - primal;
  if (std::abs(out.gap) > gap_tol)
    throw std::logic_error("bl_distance: duality gap above tolerance");
  return out;
}

double bl_distance(const Grid2D& p, const Grid2D& q, double metric_scale) {
  return bl_distance_detail(p, q, metric_scale).value;
}

}  // namespace frechet
