#include <cmath>
#include <vector>

#include "awmm/dvhop.hpp"
#include "awmm/errors.hpp"
#include "awmm/random.hpp"
#include "doctest.h"

using namespace awmm;

TEST_CASE("average hop distance over a line of anchors") {
  const std::vector<Vec2> anchors{{0.0, 0.0}, {20.0, 0.0}, {50.0, 0.0}};
  HopTable hops;
  hops.hops = {{0, 1, 3}, {1, 0, 2}, {3, 2, 0}};
  const AvgHopDistance dbar = avg_hop_distance(anchors, hops);
  CHECK(dbar.dbar[0] == doctest::Approx(17.5).epsilon(1e-12));
  CHECK(dbar.dbar[1] == doctest::Approx(50.0 / 3.0).epsilon(1e-12));
  CHECK(dbar.dbar[2] == doctest::Approx(16.0).epsilon(1e-12));
  CHECK(dbar.valid(0));
  CHECK(dbar.valid(1));
  CHECK(dbar.valid(2));
}

TEST_CASE("average hop distance marks cut-off anchors invalid") {
  const std::vector<Vec2> anchors{{0.0, 0.0}, {20.0, 0.0}, {500.0, 0.0}};
  HopTable hops;
  hops.hops = {{0, 1, kUnreachable}, {1, 0, kUnreachable}, {kUnreachable, kUnreachable, 0}};
  const AvgHopDistance dbar = avg_hop_distance(anchors, hops);
  CHECK(dbar.dbar[0] == doctest::Approx(20.0).epsilon(1e-12));
  CHECK(dbar.dbar[1] == doctest::Approx(20.0).epsilon(1e-12));
  CHECK_FALSE(dbar.valid(2));
}

TEST_CASE("hop-scaled range fixture") {
  CHECK(dvhop_range(17.5, 2) == doctest::Approx(35.0).epsilon(1e-12));
  CHECK(dvhop_range(16.0, 1) == doctest::Approx(16.0).epsilon(1e-12));
}

TEST_CASE("multilateration recovers an exactly ranged point") {
  const std::vector<Vec2> anchors{{0.0, 0.0}, {10.0, 0.0}, {0.0, 10.0}};
  const std::vector<double> ranges{5.0, std::sqrt(65.0), std::sqrt(45.0)};
  const Vec2 x = multilaterate_ls(anchors, ranges);
  CHECK(x.x == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(x.y == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("multilateration rejects degenerate anchor layouts") {
  CHECK_THROWS_AS(
      multilaterate_ls({{0.0, 0.0}, {5.0, 0.0}, {10.0, 0.0}}, {1.0, 2.0, 3.0}),
      DegenerateGeometryError);
  CHECK_THROWS_AS(
      multilaterate_ls({{0.0, 0.0}, {0.0, 0.0}, {10.0, 0.0}}, {1.0, 1.0, 3.0}),
      DegenerateGeometryError);
  CHECK_THROWS_AS(multilaterate_ls({{0.0, 0.0}, {5.0, 0.0}}, {1.0, 2.0}), ConfigError);
}

TEST_CASE("multilateration agrees with an explicit normal-equation solve") {
  Rng rng(11u);
  for (int k = 0; k < 50; ++k) {
    const int count = 4 + static_cast<int>(rng.uniform(0.0, 3.0));
    std::vector<Vec2> anchors;
    for (int i = 0; i < count; ++i)
      anchors.push_back({rng.uniform(0.0, 100.0), rng.uniform(0.0, 100.0)});
    const Vec2 p{rng.uniform(0.0, 100.0), rng.uniform(0.0, 100.0)};
    std::vector<double> ranges;
    for (const Vec2 a : anchors)
      ranges.push_back(distance(p, a) * rng.uniform(0.9, 1.1));

    // Reference solve in long double, rows written out one by one.
    const Vec2 piv = anchors.back();
    long double m00 = 0, m01 = 0, m11 = 0, b0 = 0, b1 = 0;
    for (int i = 0; i + 1 < count; ++i) {
      const long double ax = 2.0L * (piv.x - anchors[i].x);
      const long double ay = 2.0L * (piv.y - anchors[i].y);
      const long double rhs = static_cast<long double>(ranges[i]) * ranges[i] -
                              static_cast<long double>(ranges.back()) * ranges.back() +
                              static_cast<long double>(piv.x) * piv.x +
                              static_cast<long double>(piv.y) * piv.y -
                              static_cast<long double>(anchors[i].x) * anchors[i].x -
                              static_cast<long double>(anchors[i].y) * anchors[i].y;
      m00 += ax * ax;
      m01 += ax * ay;
      m11 += ay * ay;
      b0 += ax * rhs;
      b1 += ay * rhs;
    }
    const long double det = m00 * m11 - m01 * m01;
    if (std::abs(static_cast<double>(det)) < 1e-6) continue;
    const double ex = static_cast<double>((b0 * m11 - b1 * m01) / det);
    const double ey = static_cast<double>((b1 * m00 - b0 * m01) / det);

    const Vec2 got = multilaterate_ls(anchors, ranges);
    CHECK(got.x == doctest::Approx(ex).epsilon(1e-7));
    CHECK(got.y == doctest::Approx(ey).epsilon(1e-7));
  }
}

TEST_CASE("multilateration with exact ranges recovers random points") {
  Rng rng(12u);
  int tested = 0;
  while (tested < 60) {
    const int count = 3 + static_cast<int>(rng.uniform(0.0, 4.0));
    std::vector<Vec2> anchors;
    for (int i = 0; i < count; ++i)
      anchors.push_back({rng.uniform(0.0, 100.0), rng.uniform(0.0, 100.0)});
    const Vec2 p{rng.uniform(0.0, 100.0), rng.uniform(0.0, 100.0)};
    std::vector<double> ranges;
    for (const Vec2 a : anchors) ranges.push_back(distance(p, a));
    try {
      const Vec2 got = multilaterate_ls(anchors, ranges);
      CHECK(distance(got, p) <= 1e-4);
      ++tested;
    } catch (const DegenerateGeometryError&) {
      // rare near-collinear draw; resample
    }
  }
}

TEST_CASE("a blocking obstacle stretches hops and shrinks the average hop distance") {
  ScenarioConfig cfg;
  cfg.area_side = 100.0;
  cfg.node_count = 6;
  cfg.anchor_count = 2;
  cfg.comm_radius = 25.0;
  cfg.doi = 0.0;
  cfg.obstacle_center = {47.5, 50.0};
  cfg.obstacle_radius = 10.0;
  cfg.trials = 1;

  // Anchors at the ends of a straight relay chain; a second chain dips under
  // the obstacle.
  Deployment dep;
  dep.positions = {{10.0, 50.0}, {85.0, 50.0}, {35.0, 50.0},
                   {60.0, 50.0}, {35.0, 30.0}, {60.0, 30.0}};
  dep.anchor_count = 2;

  Rng rng_blocked(1u);
  const Topology blocked = assemble_topology(cfg, dep, rng_blocked);
  ScenarioConfig open_cfg = cfg;
  open_cfg.obstacle_radius = 0.0;
  Rng rng_open(1u);
  const Topology open = assemble_topology(open_cfg, dep, rng_open);

  // Straight line: A - m1 - m2 - B. Blocked middle link forces the dip:
  // A - m1 - d1 - d2 - m2 - B.
  CHECK(open.hop(0, 1) == 3);
  CHECK(blocked.hop(0, 1) == 5);
  CHECK(open.anchor_distance(0, 1) == blocked.anchor_distance(0, 1));

  std::vector<Vec2> anchor_pos(dep.positions.begin(), dep.positions.begin() + 2);
  const AvgHopDistance dbar_open = avg_hop_distance(anchor_pos, open.hops);
  const AvgHopDistance dbar_blocked = avg_hop_distance(anchor_pos, blocked.hops);
  CHECK(dbar_open.dbar[0] == doctest::Approx(25.0).epsilon(1e-12));
  CHECK(dbar_blocked.dbar[0] == doctest::Approx(15.0).epsilon(1e-12));
  CHECK(dbar_blocked.dbar[0] < dbar_open.dbar[0]);
}
