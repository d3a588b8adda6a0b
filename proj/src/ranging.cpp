#include "awmm/ranging.hpp"

#include <algorithm>
#include <cmath>

#include "awmm/errors.hpp"

namespace awmm {

namespace {

// Area of the lens slice with polar angle (at the a_i circle center, axis
// toward the partner center) at most theta. A ray at angle phi crosses the
// partner circle at d*cos(phi) -/+ sqrt(r_aj^2 - d^2 sin^2 phi) and the own
// circle at r_ai, so within the corner angle the slice is
//   A(theta) = integral over [0, theta] of (r_ai^2 - max(0, b(phi))^2)/2 dphi,
// b being the near partner crossing. When a_i lies inside the partner disc
// (d <= r_aj) there is no near crossing and the angle is uniform. Otherwise
// the integral has the closed form below (substitute s = sin phi for the
// cross term).
double slice_area(double theta, double r_ai, double r_aj, double d) {
  if (d <= r_aj) return 0.5 * r_ai * r_ai * theta;
  const double s = std::sin(theta);
  const double ds = d * s;
  const double rad = std::max(r_aj * r_aj - ds * ds, 0.0);
  return 0.5 * (r_ai * r_ai - r_aj * r_aj) * theta - 0.25 * d * d * std::sin(2.0 * theta) +
         0.5 * d * s * std::sqrt(rad) +
         0.5 * r_aj * r_aj * std::asin(std::min(ds / r_aj, 1.0));
}

// 16-point Gauss-Legendre abscissae/weights on [-1, 1] (positive half; the
// rule is symmetric).
constexpr double kGlNode[8] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
    0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
constexpr double kGlWeight[8] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

template <typename F>
double composite_gl16(const F& f, double lo, double hi, int panels) {
  const double width = (hi - lo) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = lo + (p + 0.5) * width;
    const double half = 0.5 * width;
    double acc = 0.0;
    for (int k = 0; k < 8; ++k)
      acc += kGlWeight[k] * (f(mid - half * kGlNode[k]) + f(mid + half * kGlNode[k]));
    total += acc * half;
  }
  return total;
}

}  // namespace

double theta_max(double r_ai, double r_aj, double d) {
  if (!(r_ai > 0.0) || !(d > 0.0))
    throw GeometryError("pair angle needs positive ranging radius and separation");
  const double ratio = (r_ai * r_ai + d * d - r_aj * r_aj) / (2.0 * r_ai * d);
  if (ratio < -1.0 - 1e-12 || ratio > 1.0 + 1e-12)
    throw GeometryError("pair circles do not intersect; no corner angle");
  return std::acos(std::clamp(ratio, -1.0, 1.0));
}

LensGeometry make_lens_geometry(double r_ai, double r_aj, double d) {
  if (!(r_ai > 0.0) || !(r_aj > 0.0) || !(d > 0.0))
    throw GeometryError("lens needs positive radii and separation");
  if (!(std::abs(r_ai - r_aj) < d && d < r_ai + r_aj))
    throw GeometryError("lens circles do not properly intersect");
  LensGeometry g;
  g.r_ai = r_ai;
  g.r_aj = r_aj;
  g.d = d;
  g.theta_max = theta_max(r_ai, r_aj, d);
  g.lens_area = slice_area(g.theta_max, r_ai, r_aj, d);
  if (!(g.theta_max > 0.0) || !(g.lens_area > 0.0))
    throw GeometryError("lens region is degenerate");
  return g;
}

double lens_cdf(double theta, const LensGeometry& g) {
  theta = std::clamp(theta, 0.0, g.theta_max);
  return slice_area(theta, g.r_ai, g.r_aj, g.d) / g.lens_area;
}

double angle_pdf(double theta, const LensGeometry& g) {
  if (theta < 0.0 || theta > g.theta_max) return 0.0;
  if (g.d <= g.r_aj) return 0.5 * g.r_ai * g.r_ai / g.lens_area;
  const double s = std::sin(theta);
  const double ds = g.d * s;
  const double rad = std::max(g.r_aj * g.r_aj - ds * ds, 0.0);
  const double b = g.d * std::cos(theta) - std::sqrt(rad);  // > 0 since d > r_aj
  const double val = 0.5 * (g.r_ai * g.r_ai - b * b) / g.lens_area;
  return std::max(val, 0.0);
}

double estimate_optimal(double dbar, int h_aiu, const LensGeometry& g) {
  // sec(theta) blows up at pi/2; clip the quadrature interval just short of it.
  const double cap = std::min(g.theta_max, std::acos(-1.0) / 2.0 - 1e-3);
  const double scale = dbar * h_aiu;
  const auto integrand = [&](double th) { return angle_pdf(th, g) * scale / std::cos(th); };
  double prev = composite_gl16(integrand, 0.0, cap, 4);  // 64 nodes minimum
  for (int panels = 8; panels <= 256; panels *= 2) {
    const double cur = composite_gl16(integrand, 0.0, cap, panels);
    const double diff = std::abs(cur - prev);
    prev = cur;
    if (diff <= 1e-6 * std::max(std::abs(cur), 1e-300)) break;
  }
  return prev;
}

double estimate_suboptimal(double path_dist_aiaj, int h_aiaj, int h_aiu) {
  return path_dist_aiaj / h_aiaj * h_aiu;
}

RangeEstimate estimate_range(int anchor, int node, const AnchorPairing& pairing,
                             const AvgHopDistance& dbar, const Topology& topo) {
  const double db = dbar.dbar[anchor];
  const int h = topo.hop(anchor, node);
  if (pairing.partner != kNoPartner && pairing.cls != PairClass::Unavailable) {
    try {
      if (pairing.cls == PairClass::Optimal) {
        const double radius = topo.cfg.comm_radius;
        const LensGeometry lens =
            make_lens_geometry(radius * h, radius * topo.hop(pairing.partner, node),
                               topo.anchor_distance(anchor, pairing.partner));
        return {estimate_optimal(db, h, lens), RangeMethod::OptimalIntegral, pairing};
      }
      const double path = topo.anchor_path_distance(anchor, pairing.partner);
      const int h_ij = topo.hop(anchor, pairing.partner);
      if (std::isfinite(path) && h_ij >= 1)
        return {estimate_suboptimal(path, h_ij, h), RangeMethod::SuboptimalPerHop, pairing};
    } catch (const GeometryError&) {
      // fall through to the hop-scaled estimate
    }
  }
  return {dvhop_range(db, h), RangeMethod::DvHopFallback, pairing};
}

}  // namespace awmm
