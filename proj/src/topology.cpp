#include "awmm/topology.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>

#include "awmm/errors.hpp"

namespace awmm {

namespace {

constexpr int kMaxRejectionAttempts = 10000;  // per node

}  // namespace

void validate(const ScenarioConfig& cfg) {
  if (!(cfg.area_side > 0.0)) throw ConfigError("area_side must be positive");
  if (cfg.node_count < 1) throw ConfigError("node_count must be at least 1");
  if (cfg.anchor_count < 3) throw ConfigError("anchor_count must be at least 3");
  if (cfg.anchor_count >= cfg.node_count)
    throw ConfigError("anchor_count must be smaller than node_count");
  if (!(cfg.comm_radius > 0.0)) throw ConfigError("comm_radius must be positive");
  if (!(cfg.doi >= 0.0 && cfg.doi < 1.0)) throw ConfigError("doi must lie in [0, 1)");
  if (cfg.obstacle_radius < 0.0) throw ConfigError("obstacle_radius must be non-negative");
  if (cfg.obstacle_radius > 0.0) {
    const Vec2 c = cfg.obstacle_center;
    const double r = cfg.obstacle_radius;
    if (c.x - r < 0.0 || c.x + r > cfg.area_side || c.y - r < 0.0 || c.y + r > cfg.area_side)
      throw ConfigError("obstacle disc must lie fully inside the deployment area");
  }
  if (cfg.trials < 1) throw ConfigError("trials must be at least 1");
  if (!(cfg.epsilon > 0.0)) throw ConfigError("epsilon must be positive");
}

bool ConnectivityGraph::has_edge(int i, int j) const {
  const auto& ni = neighbors[i];
  return std::binary_search(ni.begin(), ni.end(), j);
}

Deployment generate_deployment(const ScenarioConfig& cfg, Rng& rng) {
  validate(cfg);
  Deployment dep;
  dep.anchor_count = cfg.anchor_count;
  dep.positions.reserve(cfg.node_count);
  for (int i = 0; i < cfg.node_count; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < kMaxRejectionAttempts; ++attempt) {
      const Vec2 p{rng.uniform(0.0, cfg.area_side), rng.uniform(0.0, cfg.area_side)};
      // Points strictly inside the obstacle are rejected; the boundary is fine.
      if (cfg.obstacle_radius > 0.0 &&
          distance(p, cfg.obstacle_center) < cfg.obstacle_radius)
        continue;
      dep.positions.push_back(p);
      placed = true;
      break;
    }
    if (!placed)
      throw ConfigError("deployment rejection sampling failed; obstacle covers too much area");
  }
  return dep;
}

ConnectivityGraph build_connectivity(const Deployment& dep, const ScenarioConfig& cfg, Rng& rng) {
  const int n = dep.size();
  ConnectivityGraph g;
  g.neighbors.assign(n, {});
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double u = rng.uniform01();  // always consumed, keeps the stream aligned
      const double r_eff = cfg.comm_radius * (1.0 - cfg.doi * u);
      if (distance(dep.positions[i], dep.positions[j]) > r_eff) continue;
      if (cfg.obstacle_radius > 0.0 &&
          segment_intersects_disc(dep.positions[i], dep.positions[j], cfg.obstacle_center,
                                  cfg.obstacle_radius))
        continue;
      g.neighbors[i].push_back(j);
      g.neighbors[j].push_back(i);
    }
  }
  // Ascending by construction: i receives j > i in increasing order, and j
  // receives i < j in increasing order of i.
  return g;
}

std::vector<int> compute_hops(const ConnectivityGraph& g, int source) {
  std::vector<int> hops(g.size(), kUnreachable);
  std::deque<int> frontier;
  hops[source] = 0;
  frontier.push_back(source);
  while (!frontier.empty()) {
    const int v = frontier.front();
    frontier.pop_front();
    for (int u : g.neighbors[v]) {
      if (hops[u] != kUnreachable) continue;
      hops[u] = hops[v] + 1;
      frontier.push_back(u);
    }
  }
  return hops;
}

std::vector<int> hop_path(const ConnectivityGraph& g, const std::vector<int>& hops_from_source,
                          int source, int target) {
  if (hops_from_source[target] == kUnreachable) return {};
  std::vector<int> path{target};
  int v = target;
  while (v != source) {
    const int want = hops_from_source[v] - 1;
    int pred = kUnreachable;
    for (int u : g.neighbors[v]) {
      if (hops_from_source[u] == want) {
        pred = u;  // neighbors ascend, so the first hit is the smallest index
        break;
      }
    }
    v = pred;
    path.push_back(v);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

Topology assemble_topology(const ScenarioConfig& cfg, Deployment dep, Rng& link_rng) {
  Topology topo;
  topo.cfg = cfg;
  topo.dep = std::move(dep);
  topo.graph = build_connectivity(topo.dep, cfg, link_rng);

  const int m = topo.dep.anchor_count;
  topo.hops.hops.reserve(m);
  for (int a = 0; a < m; ++a) topo.hops.hops.push_back(compute_hops(topo.graph, a));

  const double nan = std::numeric_limits<double>::quiet_NaN();
  topo.anchor_path_dist.assign(m, std::vector<double>(m, nan));
  for (int a = 0; a < m; ++a) {
    topo.anchor_path_dist[a][a] = 0.0;
    for (int b = 0; b < m; ++b) {
      if (b == a) continue;
      const auto path = hop_path(topo.graph, topo.hops.hops[a], a, b);
      if (path.empty()) continue;
      double len = 0.0;
      for (std::size_t k = 1; k < path.size(); ++k)
        len += distance(topo.dep.positions[path[k - 1]], topo.dep.positions[path[k]]);
      topo.anchor_path_dist[a][b] = len;
    }
  }
  return topo;
}

}  // namespace awmm
