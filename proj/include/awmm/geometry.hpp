#pragma once

#include <cmath>

namespace awmm {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 v) { return std::sqrt(v.x * v.x + v.y * v.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

// Minimum distance from segment pq to point c.
inline double segment_point_distance(Vec2 p, Vec2 q, Vec2 c) {
  const Vec2 pq = q - p;
  const double len2 = dot(pq, pq);
  if (len2 == 0.0) return distance(p, c);
  double t = dot(c - p, pq) / len2;
  if (t < 0.0) t = 0.0;
  if (t > 1.0) t = 1.0;
  return distance(p + t * pq, c);
}

// True iff segment pq passes strictly inside the disc (c, r); tangency does
// not count as an intersection.
inline bool segment_intersects_disc(Vec2 p, Vec2 q, Vec2 c, double r) {
  return segment_point_distance(p, q, c) < r;
}

}  // namespace awmm
