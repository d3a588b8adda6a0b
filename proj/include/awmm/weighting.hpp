#pragma once

#include "awmm/dvhop.hpp"
#include "awmm/topology.hpp"

namespace awmm {

// Detour discrepancy of an anchor pair: dbar*(h_aiu + h_aju) - d_aiaj, the
// gap between the hop-predicted two-leg length and the straight-line anchor
// separation. Large values flag detoured, unreliable hop paths.
double delta_sigma(double dbar, int h_aiu, int h_aju, double d_aiaj);

// Range confidence w = h_aiu^(-ds') with ds' = clamp(delta_sigma, 0, ds_max)
// and ds_max = ln(1e6)/ln(max(h_aiu,2)), so w always lies in [1e-6, 1] and
// one-hop ranges keep full weight.
double weight(int h_aiu, double delta_sigma);

// Discrepancy used for fallback-ranged anchors, taken against the reachable
// anchor with the fewest hops to the node (smallest index on ties); 0 when no
// other anchor reaches the node.
double fallback_delta_sigma(int anchor, int node, const Topology& topo,
                            const AvgHopDistance& dbar);

struct WeightedRange {
  double dhat = 0.0;
  double w = 1.0;
  int anchor = -1;
};

}  // namespace awmm
