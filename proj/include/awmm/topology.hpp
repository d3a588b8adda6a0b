#pragma once

#include <cstdint>
#include <vector>

#include "awmm/geometry.hpp"
#include "awmm/random.hpp"

namespace awmm {

// Hop-count sentinel for nodes with no path to the source.
inline constexpr int kUnreachable = -1;

struct ScenarioConfig {
  double area_side = 100.0;          // L, meters; deployment square is [0,L]^2
  int node_count = 150;              // n, anchors included
  int anchor_count = 30;             // m, first m nodes are anchors
  double comm_radius = 20.0;         // R, meters
  double doi = 0.02;                 // degree of irregularity, in [0,1)
  Vec2 obstacle_center{50.0, 50.0};  // radio-opaque disc blocking links
  double obstacle_radius = 45.0;     // 0 disables the obstacle; the default
                                     // carves a central void that forces hop
                                     // paths into a ring, the regime where
                                     // hop-count ranging degrades
  int trials = 100;                  // Monte Carlo trials
  double epsilon = 1e-3;             // solver stopping threshold, meters
  std::uint64_t base_seed = 1;
};

// Throws ConfigError naming the offending field.
void validate(const ScenarioConfig& cfg);

struct Deployment {
  std::vector<Vec2> positions;  // length node_count, anchors first
  int anchor_count = 0;

  bool is_anchor(int i) const { return i < anchor_count; }
  int size() const { return static_cast<int>(positions.size()); }
};

struct ConnectivityGraph {
  std::vector<std::vector<int>> neighbors;  // ascending, symmetric, no self-loops

  int size() const { return static_cast<int>(neighbors.size()); }
  bool has_edge(int i, int j) const;
};

struct HopTable {
  std::vector<std::vector<int>> hops;  // hops[a][v] for anchor a, node v

  int anchor_count() const { return static_cast<int>(hops.size()); }
};

// Uniform positions over [0,L]^2, rejecting points strictly inside the
// obstacle disc. Throws ConfigError if rejection keeps failing.
Deployment generate_deployment(const ScenarioConfig& cfg, Rng& rng);

// Link i~j iff dist <= R*(1 - doi*u_ij) and the segment clears the obstacle.
// One u_ij draw is consumed per unordered pair, in (i,j) ascending order, so a
// given rng seed always yields the same graph.
ConnectivityGraph build_connectivity(const Deployment& dep, const ScenarioConfig& cfg, Rng& rng);

// BFS hop counts from one source; kUnreachable where no path exists.
std::vector<int> compute_hops(const ConnectivityGraph& g, int source);

// Shortest-hop path source -> target, built by walking predecessors from the
// target; among equal-hop predecessors the smallest index wins. Empty when
// unreachable.
std::vector<int> hop_path(const ConnectivityGraph& g, const std::vector<int>& hops_from_source,
                          int source, int target);

struct Topology {
  ScenarioConfig cfg;
  Deployment dep;
  ConnectivityGraph graph;
  HopTable hops;
  // Summed link lengths along the shortest-hop path between anchors; NaN when
  // disconnected, 0 on the diagonal.
  std::vector<std::vector<double>> anchor_path_dist;

  int hop(int anchor, int node) const { return hops.hops[anchor][node]; }
  double anchor_distance(int a, int b) const {
    return distance(dep.positions[a], dep.positions[b]);
  }
  double anchor_path_distance(int a, int b) const { return anchor_path_dist[a][b]; }
};

// Connectivity + hop table + anchor path distances over a fixed deployment.
Topology assemble_topology(const ScenarioConfig& cfg, Deployment dep, Rng& link_rng);

}  // namespace awmm
