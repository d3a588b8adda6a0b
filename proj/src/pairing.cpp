#include "awmm/pairing.hpp"

#include <cmath>
#include <limits>

#include "awmm/weighting.hpp"

namespace awmm {

PairClass classify_pair(double d_aiaj, double comm_radius, int h_aiu, int h_aju) {
  if (h_aiu == kUnreachable || h_aju == kUnreachable) return PairClass::Unavailable;
  if (h_aiu < 1 || h_aju < 1 || !(d_aiaj > 0.0)) return PairClass::Unavailable;
  const double r_i = comm_radius * h_aiu;
  const double r_j = comm_radius * h_aju;
  const double ratio = (r_i * r_i + d_aiaj * d_aiaj - r_j * r_j) / (2.0 * r_i * d_aiaj);
  const bool ratio_ok = ratio >= -1.0 && ratio <= 1.0;
  if (d_aiaj > r_i && d_aiaj > r_j && ratio_ok) return PairClass::Optimal;
  if (d_aiaj < r_i && d_aiaj > r_j && ratio_ok) return PairClass::Suboptimal;
  return PairClass::Unavailable;
}

AnchorPairing select_partner(int anchor, int node, const Topology& topo,
                             const AvgHopDistance& dbar) {
  const int m = topo.dep.anchor_count;
  const double radius = topo.cfg.comm_radius;
  const int h_iu = topo.hop(anchor, node);
  for (const PairClass want : {PairClass::Optimal, PairClass::Suboptimal}) {
    int best = kNoPartner;
    double best_ds = std::numeric_limits<double>::infinity();
    for (int j = 0; j < m; ++j) {
      if (j == anchor) continue;
      const double d = topo.anchor_distance(anchor, j);
      if (classify_pair(d, radius, h_iu, topo.hop(j, node)) != want) continue;
      const double ds = delta_sigma(dbar.dbar[anchor], h_iu, topo.hop(j, node), d);
      if (ds < best_ds) {  // strict: ties keep the smaller anchor index
        best = j;
        best_ds = ds;
      }
    }
    if (best != kNoPartner) return {best, want, best_ds};
  }
  return {};
}

}  // namespace awmm
