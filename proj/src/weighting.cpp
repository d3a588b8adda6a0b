#include "awmm/weighting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace awmm {

double delta_sigma(double dbar, int h_aiu, int h_aju, double d_aiaj) {
  return dbar * (h_aiu + h_aju) - d_aiaj;
}

double weight(int h_aiu, double delta_sigma) {
  if (h_aiu <= 1) return 1.0;
  // Cap the exponent so the weight bottoms out at exactly 1e-6.
  const double ds_max = std::log(1e6) / std::log(static_cast<double>(std::max(h_aiu, 2)));
  const double ds = std::clamp(delta_sigma, 0.0, ds_max);
  return std::pow(static_cast<double>(h_aiu), -ds);
}

double fallback_delta_sigma(int anchor, int node, const Topology& topo,
                            const AvgHopDistance& dbar) {
  const int m = topo.dep.anchor_count;
  int best = -1;
  int best_h = std::numeric_limits<int>::max();
  for (int j = 0; j < m; ++j) {
    if (j == anchor) continue;
    const int h = topo.hop(j, node);
    if (h == kUnreachable || h < 1) continue;
    if (h < best_h) {  // strict: ties keep the smaller anchor index
      best = j;
      best_h = h;
    }
  }
  if (best < 0) return 0.0;
  return delta_sigma(dbar.dbar[anchor], topo.hop(anchor, node), best_h,
                     topo.anchor_distance(anchor, best));
}

}  // namespace awmm
