#include <algorithm>
#include <cmath>
#include <vector>

#include "awmm/errors.hpp"
#include "awmm/ranging.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace awmm;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Independent reference: area of the full intersection of two discs.
double disc_intersection_area(double r1, double r2, double d) {
  const double a1 = std::acos(std::clamp((d * d + r1 * r1 - r2 * r2) / (2.0 * d * r1), -1.0, 1.0));
  const double a2 = std::acos(std::clamp((d * d + r2 * r2 - r1 * r1) / (2.0 * d * r2), -1.0, 1.0));
  const double herons =
      (-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2);
  return r1 * r1 * a1 + r2 * r2 * a2 - 0.5 * std::sqrt(std::max(herons, 0.0));
}

// Composite Simpson over [0, hi] with n even intervals.
template <typename F>
double simpson(const F& f, double hi, int n) {
  const double h = hi / n;
  double acc = f(0.0) + f(hi);
  for (int k = 1; k < n; ++k) acc += f(k * h) * (k % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

// Geometry with the ranging anchor outside the partner circle and both radii
// below the separation, the shape a properly classified pair produces; its
// corner angle always stays clear of pi/2.
LensGeometry random_far_pair_lens(Rng& rng) {
  for (;;) {
    const double r1 = rng.uniform(5.0, 30.0);
    const double r2 = rng.uniform(5.0, 30.0);
    const double lo = std::max(r1, r2) * 1.05;
    const double hi = (r1 + r2) * 0.95;
    if (lo >= hi) continue;
    return make_lens_geometry(r1, r2, rng.uniform(lo, hi));
  }
}

}  // namespace

TEST_CASE("corner angle fixtures and guards") {
  CHECK(theta_max(20.0, 20.0, 30.0) == doctest::Approx(std::acos(0.75)).epsilon(1e-12));
  CHECK(theta_max(20.0, 20.0, 20.0) == doctest::Approx(kPi / 3.0).epsilon(1e-12));
  // Externally tangent circles close the angle completely.
  CHECK(theta_max(10.0, 5.0, 15.0) == doctest::Approx(0.0).epsilon(1e-9));

  CHECK_THROWS_AS(theta_max(-1.0, 5.0, 3.0), GeometryError);
  CHECK_THROWS_AS(theta_max(5.0, 5.0, 0.0), GeometryError);
  CHECK_THROWS_AS(theta_max(1.0, 1.0, 5.0), GeometryError);   // separated
  CHECK_THROWS_AS(theta_max(1.0, 10.0, 2.0), GeometryError);  // contained
}

TEST_CASE("lens construction demands a proper intersection") {
  CHECK_THROWS_AS(make_lens_geometry(10.0, 5.0, 15.0), GeometryError);  // external tangency
  CHECK_THROWS_AS(make_lens_geometry(10.0, 5.0, 5.0), GeometryError);   // internal tangency
  CHECK_THROWS_AS(make_lens_geometry(10.0, 5.0, 16.0), GeometryError);
  CHECK_THROWS_AS(make_lens_geometry(10.0, 5.0, 4.0), GeometryError);
  CHECK_THROWS_AS(make_lens_geometry(0.0, 5.0, 3.0), GeometryError);
  CHECK_THROWS_AS(make_lens_geometry(5.0, -1.0, 3.0), GeometryError);

  const LensGeometry g = make_lens_geometry(2.0, 1.2, 2.5);
  CHECK(g.theta_max > 0.0);
  CHECK(g.lens_area > 0.0);
  CHECK(g.theta_max < kPi / 2.0);
}

TEST_CASE("lens area equals half the disc intersection when the corner angle bounds it") {
  // With d^2 >= r1^2 + r2^2 the whole upper half-lens sits inside the corner
  // angle, so the two areas must agree exactly.
  const LensGeometry fix = make_lens_geometry(2.0, 1.2, 2.5);
  CHECK(fix.lens_area ==
        doctest::Approx(0.5 * disc_intersection_area(2.0, 1.2, 2.5)).epsilon(1e-9));

  Rng rng(20260814u);
  for (int k = 0; k < 10; ++k) {
    double r1 = 0.0, r2 = 0.0, d = 0.0;
    for (;;) {
      r1 = rng.uniform(5.0, 30.0);
      r2 = rng.uniform(5.0, 30.0);
      const double lo = std::hypot(r1, r2) * 1.0001;
      const double hi = (r1 + r2) * 0.999;
      if (lo >= hi) continue;
      d = rng.uniform(lo, hi);
      break;
    }
    const LensGeometry g = make_lens_geometry(r1, r2, d);
    CAPTURE(r1);
    CAPTURE(r2);
    CAPTURE(d);
    CHECK(g.lens_area == doctest::Approx(0.5 * disc_intersection_area(r1, r2, d)).epsilon(1e-9));
  }

  // Equilateral layout: the region is a plain pie slice of the first circle.
  const LensGeometry eq = make_lens_geometry(20.0, 20.0, 20.0);
  CHECK(eq.lens_area == doctest::Approx(0.5 * 400.0 * eq.theta_max).epsilon(1e-12));
}

TEST_CASE("lens area matches rejection sampling when the lens pokes past the corner angle") {
  // d^2 < r1^2 + r2^2 with d > r2: part of the half-lens lies beyond
  // theta_max and must not count.
  const LensGeometry g = make_lens_geometry(10.0, 9.0, 11.0);
  CHECK(g.lens_area < 0.5 * disc_intersection_area(10.0, 9.0, 11.0));

  Rng rng(77u);
  const double xlo = std::max(-g.r_ai, g.d - g.r_aj);
  const double xhi = std::min(g.r_ai, g.d + g.r_aj);
  const double yhi = std::min(g.r_ai, g.r_aj);
  const int total = 400000;
  long hits = 0;
  for (int k = 0; k < total; ++k) {
    const double x = rng.uniform(xlo, xhi);
    const double y = rng.uniform(0.0, yhi);
    if (x * x + y * y > g.r_ai * g.r_ai) continue;
    const double dx = x - g.d;
    if (dx * dx + y * y > g.r_aj * g.r_aj) continue;
    if (std::atan2(y, x) > g.theta_max) continue;
    ++hits;
  }
  const double mc_area = (xhi - xlo) * yhi * static_cast<double>(hits) / total;
  CHECK(g.lens_area == doctest::Approx(mc_area).epsilon(0.02));
}

TEST_CASE("angle cdf endpoints, clamping and monotonicity") {
  Rng rng(3u);
  for (int k = 0; k < 10; ++k) {
    const LensGeometry g = oracles::random_lens(rng);
    CHECK(lens_cdf(0.0, g) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(lens_cdf(g.theta_max, g) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(lens_cdf(-1.0, g) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(lens_cdf(g.theta_max + 1.0, g) == doctest::Approx(1.0).epsilon(1e-12));
    double prev = 0.0;
    for (int i = 0; i <= 64; ++i) {
      const double cur = lens_cdf(g.theta_max * i / 64.0, g);
      CHECK(cur >= prev - 1e-12);
      prev = cur;
    }
  }

  // Equilateral layout: the angle is uniform, so the cdf is linear.
  const LensGeometry eq = make_lens_geometry(20.0, 20.0, 20.0);
  CHECK(lens_cdf(kPi / 6.0, eq) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(lens_cdf(kPi / 12.0, eq) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("angle density integrates to one and differentiates the cdf") {
  Rng rng(4u);
  std::vector<LensGeometry> geoms{make_lens_geometry(20.0, 20.0, 20.0),
                                  make_lens_geometry(2.0, 1.2, 2.5),
                                  make_lens_geometry(10.0, 9.0, 11.0)};
  for (int k = 0; k < 6; ++k) geoms.push_back(oracles::random_lens(rng));

  for (const LensGeometry& g : geoms) {
    CAPTURE(g.r_ai);
    CAPTURE(g.r_aj);
    CAPTURE(g.d);
    const double mass =
        simpson([&](double th) { return angle_pdf(th, g); }, g.theta_max, 20000);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));

    const double h = 1e-5 * g.theta_max;
    for (const double frac : {0.25, 0.5, 0.75}) {
      const double th = frac * g.theta_max;
      const double fd = (lens_cdf(th + h, g) - lens_cdf(th - h, g)) / (2.0 * h);
      CHECK(fd == doctest::Approx(angle_pdf(th, g)).epsilon(1e-4));
    }
    CHECK(angle_pdf(-0.1, g) == 0.0);
    CHECK(angle_pdf(g.theta_max + 0.1, g) == 0.0);
  }
}

TEST_CASE("angle cdf matches rejection sampling across geometries") {
  Rng geom_rng(123u);
  std::vector<LensGeometry> geoms{make_lens_geometry(20.0, 20.0, 20.0),
                                  make_lens_geometry(2.0, 1.2, 2.5),
                                  make_lens_geometry(10.0, 9.0, 11.0)};
  for (int k = 0; k < 8; ++k) geoms.push_back(oracles::random_lens(geom_rng));

  Rng sample_rng(456u);
  for (const LensGeometry& g : geoms) {
    CAPTURE(g.r_ai);
    CAPTURE(g.r_aj);
    CAPTURE(g.d);
    const std::vector<double> angles = oracles::sample_lens_angles(g, 100000, sample_rng);
    for (int i = 1; i <= 10; ++i) {
      const double th = g.theta_max * i / 10.0;
      CHECK(std::abs(oracles::empirical_cdf(angles, th) - lens_cdf(th, g)) <= 0.015);
    }
  }
}

TEST_CASE("probability-weighted range matches the analytic uniform-angle value") {
  // Equilateral layout: angle uniform on [0, theta_max], so the expected
  // secant has the closed form log(sec + tan) / theta_max.
  const LensGeometry eq = make_lens_geometry(20.0, 20.0, 20.0);
  const double expected = 18.0 * std::log(2.0 + std::sqrt(3.0)) / (kPi / 3.0);
  CHECK(estimate_optimal(18.0, 1, eq) == doctest::Approx(expected).epsilon(1e-6));

  // Scale linearity in dbar * h.
  CHECK(estimate_optimal(9.0, 2, eq) == doctest::Approx(expected).epsilon(1e-9));
  CHECK(estimate_optimal(36.0, 1, eq) == doctest::Approx(2.0 * expected).epsilon(1e-9));
}

TEST_CASE("probability-weighted range matches Monte Carlo expectation") {
  Rng geom_rng(9000u);
  Rng sample_rng(9001u);
  for (int k = 0; k < 3; ++k) {
    const LensGeometry g = random_far_pair_lens(geom_rng);
    CAPTURE(g.r_ai);
    CAPTURE(g.r_aj);
    CAPTURE(g.d);
    REQUIRE(g.theta_max < kPi / 2.0 - 1e-3);
    const double mc = oracles::expected_secant_range(g, 12.5, 2, 400000, sample_rng);
    CHECK(estimate_optimal(12.5, 2, g) == doctest::Approx(mc).epsilon(5e-3));
  }
}

TEST_CASE("probability-weighted range never falls below the hop-scaled one") {
  Rng rng(31u);
  for (int k = 0; k < 12; ++k) {
    const LensGeometry g = random_far_pair_lens(rng);
    const double scale = rng.uniform(5.0, 40.0);
    CHECK(estimate_optimal(scale, 1, g) >= scale * (1.0 - 1e-9));
  }

  // A sliver of a lens leaves almost no room for the angle, so the estimate
  // collapses to the hop-scaled range.
  const LensGeometry thin = make_lens_geometry(10.0, 8.0, 17.98);
  const double est = estimate_optimal(15.0, 2, thin);
  CHECK(est >= 30.0 * (1.0 - 1e-9));
  CHECK(est == doctest::Approx(30.0).epsilon(1e-3));
}

TEST_CASE("per-hop scaled range fixtures") {
  CHECK(estimate_suboptimal(50.0, 5, 2) == doctest::Approx(20.0).epsilon(1e-12));
  CHECK(estimate_suboptimal(33.3, 3, 1) == doctest::Approx(11.1).epsilon(1e-12));
  CHECK(estimate_suboptimal(10.0, 1, 4) == doctest::Approx(40.0).epsilon(1e-12));
}

namespace {

// Hand-built network: positions are chosen, links follow from R with doi = 0.
Topology tiny_topology(std::vector<Vec2> positions, int anchors, double radius) {
  ScenarioConfig cfg;
  cfg.area_side = 1000.0;
  cfg.node_count = static_cast<int>(positions.size());
  cfg.anchor_count = anchors;
  cfg.comm_radius = radius;
  cfg.doi = 0.0;
  cfg.obstacle_radius = 0.0;
  Deployment dep;
  dep.positions = std::move(positions);
  dep.anchor_count = anchors;
  Rng rng(1u);
  return assemble_topology(cfg, std::move(dep), rng);
}

}  // namespace

TEST_CASE("range dispatch follows the pair class and falls back on bad geometry") {
  // Two anchors 30 apart, the unknown one hop from both.
  const Topology topo =
      tiny_topology({{0.0, 0.0}, {30.0, 0.0}, {15.0, 5.0}}, 2, 20.0);
  std::vector<Vec2> anchor_pos{topo.dep.positions[0], topo.dep.positions[1]};
  const AvgHopDistance dbar = avg_hop_distance(anchor_pos, topo.hops);
  REQUIRE(topo.hop(0, 2) == 1);
  REQUIRE(topo.hop(1, 2) == 1);
  REQUIRE(topo.hop(0, 1) == 2);
  REQUIRE(dbar.dbar[0] == doctest::Approx(15.0));

  SUBCASE("properly intersecting pair uses the lens integral") {
    const AnchorPairing pairing = select_partner(0, 2, topo, dbar);
    REQUIRE(pairing.partner == 1);
    REQUIRE(pairing.cls == PairClass::Optimal);
    CHECK(pairing.delta_sigma == doctest::Approx(0.0).epsilon(1e-12));

    const RangeEstimate est = estimate_range(0, 2, pairing, dbar, topo);
    CHECK(est.method == RangeMethod::OptimalIntegral);
    const LensGeometry g = make_lens_geometry(20.0, 20.0, 30.0);
    CHECK(est.dhat == doctest::Approx(estimate_optimal(15.0, 1, g)).epsilon(1e-12));
  }

  SUBCASE("second-class pair scales the measured inter-anchor path per hop") {
    AnchorPairing pairing{1, PairClass::Suboptimal, 0.0};
    const RangeEstimate est = estimate_range(0, 2, pairing, dbar, topo);
    CHECK(est.method == RangeMethod::SuboptimalPerHop);
    const double path = topo.anchor_path_distance(0, 1);
    CHECK(path == doctest::Approx(2.0 * std::sqrt(250.0)).epsilon(1e-12));
    CHECK(est.dhat == doctest::Approx(path / 2.0).epsilon(1e-12));
  }

  SUBCASE("no partner means the hop-scaled fallback") {
    const RangeEstimate est = estimate_range(0, 2, AnchorPairing{}, dbar, topo);
    CHECK(est.method == RangeMethod::DvHopFallback);
    CHECK(est.dhat == doctest::Approx(15.0).epsilon(1e-12));
  }
}

TEST_CASE("range dispatch falls back when the hop circles cannot form a lens") {
  // h(a0,u) = 1 and h(a1,u) = 3 with anchors 35 apart: the one-hop circle
  // lies strictly inside the three-hop circle, so no lens exists.
  const Topology topo = tiny_topology(
      {{0.0, 0.0}, {35.0, 0.0}, {10.0, 0.0}, {10.0, 16.0}, {26.0, 16.0}}, 2, 20.0);
  REQUIRE(topo.hop(0, 2) == 1);
  REQUIRE(topo.hop(1, 2) == 3);
  std::vector<Vec2> anchor_pos{topo.dep.positions[0], topo.dep.positions[1]};
  const AvgHopDistance dbar = avg_hop_distance(anchor_pos, topo.hops);

  AnchorPairing forced{1, PairClass::Optimal, 0.0};
  const RangeEstimate est = estimate_range(0, 2, forced, dbar, topo);
  CHECK(est.method == RangeMethod::DvHopFallback);
  CHECK(est.dhat == doctest::Approx(dbar.dbar[0]).epsilon(1e-12));
}

TEST_CASE("a real second-class pair is selected and ranged along the path") {
  // R = 10: the unknown sits two hops from a0 and one from a1, anchors 15
  // apart, which lands between the two hop radii.
  const Topology topo = tiny_topology(
      {{0.0, 0.0}, {15.0, 0.0}, {9.0, 1.0}, {18.0, 2.0}}, 2, 10.0);
  const int u = 3;
  REQUIRE(topo.hop(0, u) == 2);
  REQUIRE(topo.hop(1, u) == 1);
  std::vector<Vec2> anchor_pos{topo.dep.positions[0], topo.dep.positions[1]};
  const AvgHopDistance dbar = avg_hop_distance(anchor_pos, topo.hops);
  REQUIRE(dbar.dbar[0] == doctest::Approx(7.5));

  CHECK(classify_pair(15.0, 10.0, 2, 1) == PairClass::Suboptimal);
  const AnchorPairing pairing = select_partner(0, u, topo, dbar);
  CHECK(pairing.partner == 1);
  CHECK(pairing.cls == PairClass::Suboptimal);
  CHECK(pairing.delta_sigma == doctest::Approx(7.5 * 3 - 15.0).epsilon(1e-12));

  const RangeEstimate est = estimate_range(0, u, pairing, dbar, topo);
  CHECK(est.method == RangeMethod::SuboptimalPerHop);
  const double leg1 = std::sqrt(81.0 + 1.0);
  const double leg2 = std::sqrt(36.0 + 1.0);
  CHECK(topo.anchor_path_distance(0, 1) == doctest::Approx(leg1 + leg2).epsilon(1e-12));
  CHECK(est.dhat == doctest::Approx((leg1 + leg2) / 2.0 * 2.0).epsilon(1e-12));
}
