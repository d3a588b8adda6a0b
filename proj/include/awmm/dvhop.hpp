#pragma once

#include <vector>

#include "awmm/geometry.hpp"
#include "awmm/topology.hpp"

namespace awmm {

// Per-anchor average hop distance. NaN marks anchors with no path to any
// other anchor; callers must skip those.
struct AvgHopDistance {
  std::vector<double> dbar;  // meters per hop

  bool valid(int a) const { return std::isfinite(dbar[a]); }
};

// dbar_a = sum_j dist(a, j) / sum_j hops(a, j) over anchors j reachable from a.
AvgHopDistance avg_hop_distance(const std::vector<Vec2>& anchor_positions, const HopTable& hops);

// Hop-scaled range estimate dbar * h.
double dvhop_range(double dbar, int hops);

// Linearized least-squares multilateration: each circle equation minus the
// last anchor's gives one linear equation in (x, y). Throws
// DegenerateGeometryError when the normal equations are rank deficient.
Vec2 multilaterate_ls(const std::vector<Vec2>& anchors, const std::vector<double>& ranges);

}  // namespace awmm
