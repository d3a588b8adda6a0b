#include "awmm/dvhop.hpp"

#include <cmath>
#include <limits>

#include "awmm/errors.hpp"

namespace awmm {

AvgHopDistance avg_hop_distance(const std::vector<Vec2>& anchor_positions, const HopTable& hops) {
  const int m = static_cast<int>(anchor_positions.size());
  AvgHopDistance out;
  out.dbar.assign(m, std::numeric_limits<double>::quiet_NaN());
  for (int i = 0; i < m; ++i) {
    double sum_d = 0.0;
    long sum_h = 0;
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      const int h = hops.hops[i][j];  // anchors occupy node ids 0..m-1
      if (h == kUnreachable || h <= 0) continue;
      sum_d += distance(anchor_positions[i], anchor_positions[j]);
      sum_h += h;
    }
    if (sum_h > 0) out.dbar[i] = sum_d / static_cast<double>(sum_h);
  }
  return out;
}

double dvhop_range(double dbar, int hops) { return dbar * hops; }

Vec2 multilaterate_ls(const std::vector<Vec2>& anchors, const std::vector<double>& ranges) {
  const int k = static_cast<int>(anchors.size());
  if (k < 3 || anchors.size() != ranges.size())
    throw ConfigError("multilateration needs at least 3 anchors with matching ranges");

  // Subtracting the last circle equation linearizes the rest:
  //   2(x_p - x_i) x + 2(y_p - y_i) y = r_i^2 - r_p^2 + |p|^2 - |a_i|^2.
  const Vec2 p = anchors.back();
  const double rp2 = ranges.back() * ranges.back();
  const double np2 = dot(p, p);
  double m00 = 0.0, m01 = 0.0, m11 = 0.0, b0 = 0.0, b1 = 0.0;
  for (int i = 0; i + 1 < k; ++i) {
    const Vec2 a = anchors[i];
    const double row_x = 2.0 * (p.x - a.x);
    const double row_y = 2.0 * (p.y - a.y);
    const double rhs = ranges[i] * ranges[i] - rp2 + np2 - dot(a, a);
    m00 += row_x * row_x;
    m01 += row_x * row_y;
    m11 += row_y * row_y;
    b0 += row_x * rhs;
    b1 += row_y * rhs;
  }
  const double det = m00 * m11 - m01 * m01;
  const double scale = 0.5 * (m00 + m11);
  if (!(scale > 0.0) || det <= 1e-12 * scale * scale)
    throw DegenerateGeometryError("multilateration anchors are (nearly) collinear");
  return {(b0 * m11 - b1 * m01) / det, (b1 * m00 - b0 * m01) / det};
}

}  // namespace awmm
