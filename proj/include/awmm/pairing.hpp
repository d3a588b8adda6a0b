#pragma once

#include "awmm/dvhop.hpp"
#include "awmm/topology.hpp"

namespace awmm {

enum class PairClass { Optimal, Suboptimal, Unavailable };

inline constexpr int kNoPartner = -1;

// Classification of the anchor pair (a_i, a_j) with respect to an unknown
// node u, from the a_i side. d_aiaj is the Euclidean anchor separation.
// With r_i = R*h_aiu and r_j = R*h_aju and the law-of-cosines ratio
//   (r_i^2 + d^2 - r_j^2) / (2 r_i d)
// the pair is Optimal when d > r_i, d > r_j and the ratio lies in [-1, 1]
// (the hop circles properly intersect beyond both anchors), Suboptimal when
// d < r_i, d > r_j with the same ratio bound, and Unavailable otherwise.
// Unreachable hop counts make the pair Unavailable.
PairClass classify_pair(double d_aiaj, double comm_radius, int h_aiu, int h_aju);

struct AnchorPairing {
  int partner = kNoPartner;
  PairClass cls = PairClass::Unavailable;
  double delta_sigma = 0.0;  // detour discrepancy of the chosen pair, meters
};

// Best partner anchor for (anchor, node): the Optimal candidate with the
// smallest detour discrepancy, else the best Suboptimal candidate, else none.
// Ties go to the smaller anchor index.
AnchorPairing select_partner(int anchor, int node, const Topology& topo,
                             const AvgHopDistance& dbar);

}  // namespace awmm
