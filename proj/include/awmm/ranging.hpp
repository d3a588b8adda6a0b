#pragma once

#include "awmm/dvhop.hpp"
#include "awmm/pairing.hpp"
#include "awmm/topology.hpp"

namespace awmm {

// Intersection lens of the two hop circles of an anchor pair: radius r_ai
// around the ranging anchor, r_aj around its partner, centers d apart.
// theta_max is the angle at the ranging anchor subtended by the circles'
// crossing point; lens_area is the area of the lens region within that angle
// (the region the angle density below is defined over).
struct LensGeometry {
  double r_ai = 0.0;
  double r_aj = 0.0;
  double d = 0.0;
  double theta_max = 0.0;
  double lens_area = 0.0;
};

// Corner angle of the pair geometry, acos((r_ai^2 + d^2 - r_aj^2)/(2 r_ai d)).
// Throws GeometryError when the ratio falls outside [-1, 1].
double theta_max(double r_ai, double r_aj, double d);

// Throws GeometryError unless |r_ai - r_aj| < d < r_ai + r_aj with positive
// radii and separation, and the lens region has positive area.
LensGeometry make_lens_geometry(double r_ai, double r_aj, double d);

// P(angle <= theta) for a point uniform over the lens region within
// theta_max. Exact area ratio; matches rejection sampling of the region.
double lens_cdf(double theta, const LensGeometry& g);

// Density of that angle distribution, normalized to unit mass over
// [0, theta_max]; negative round-off is clamped to 0.
double angle_pdf(double theta, const LensGeometry& g);

// Probability-weighted range through the lens: quadrature of
// pdf(theta) * dbar * h_aiu / cos(theta) over [0, min(theta_max, pi/2 - 1e-3)]
// by composite Gauss-Legendre, panels doubled until the value settles.
double estimate_optimal(double dbar, int h_aiu, const LensGeometry& g);

// Per-hop scaling along the measured anchor-to-anchor path:
// (path_dist / h_aiaj) * h_aiu.
double estimate_suboptimal(double path_dist_aiaj, int h_aiaj, int h_aiu);

enum class RangeMethod { OptimalIntegral, SuboptimalPerHop, DvHopFallback };

struct RangeEstimate {
  double dhat = 0.0;
  RangeMethod method = RangeMethod::DvHopFallback;
  AnchorPairing pair;
};

// Dispatch on the pair class; lens construction failures and missing partners
// fall back to the hop-scaled range dbar * h.
RangeEstimate estimate_range(int anchor, int node, const AnchorPairing& pairing,
                             const AvgHopDistance& dbar, const Topology& topo);

}  // namespace awmm
