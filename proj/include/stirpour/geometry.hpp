// Copyright 2026 The stirpour Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// =============================================================================

#ifndef STIRPOUR_GEOMETRY_HPP
#define STIRPOUR_GEOMETRY_HPP

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace stirpour {

using Vec2 = Eigen::Vector2d;

inline double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

/// Axis-aligned rectangle. Membership is inclusive on min edges, exclusive on max edges.
struct Rect {
  Vec2 min{0.0, 0.0};
  Vec2 max{0.0, 0.0};

  double width() const { return max.x() - min.x(); }
  double height() const { return max.y() - min.y(); }
  bool empty() const { return !(width() > 0.0 && height() > 0.0); }

  bool contains(const Vec2& p) const {
    return p.x() >= min.x() && p.x() < max.x() && p.y() >= min.y() && p.y() < max.y();
  }
};

/// Closed polyline given by its vertices; the edge back to the first vertex is implied.
using Polygon = std::vector<Vec2>;

/// Even-odd rule point-in-polygon test.
inline bool point_in_polygon(const Polygon& poly, const Vec2& p) {
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[j];
    if ((a.y() > p.y()) != (b.y() > p.y())) {
      const double x = a.x() + (p.y() - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
      if (p.x() < x) inside = !inside;
    }
  }
  return inside;
}

inline bool segments_cross(const Vec2& p1, const Vec2& p2, const Vec2& q1, const Vec2& q2) {
  const double d1 = cross(q2 - q1, p1 - q1);
  const double d2 = cross(q2 - q1, p2 - q1);
  const double d3 = cross(p2 - p1, q1 - p1);
  const double d4 = cross(p2 - p1, q2 - p1);
  return ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) &&
         ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0));
}

/// True when two non-adjacent edges of the closed polyline properly intersect,
/// or when the polygon has fewer than three vertices or a zero-length edge.
inline bool is_degenerate_or_self_intersecting(const Polygon& poly) {
  const std::size_t n = poly.size();
  if (n < 3) return true;
  for (std::size_t i = 0; i < n; ++i) {
    if ((poly[(i + 1) % n] - poly[i]).norm() == 0.0) return true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      if (segments_cross(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n])) return true;
    }
  }
  return false;
}

/// Rotation of `p` about `pivot` by `angle` radians (counter-clockwise positive).
inline Vec2 rotate_about(const Vec2& p, const Vec2& pivot, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const Vec2 d = p - pivot;
  return pivot + Vec2(c * d.x() - s * d.y(), s * d.x() + c * d.y());
}

struct ClosestPoint {
  Vec2 point;
  double t = 0.0;  // segment parameter in [0, 1]
  double distance = 0.0;
};

inline ClosestPoint closest_on_segment(const Vec2& a, const Vec2& b, const Vec2& p) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  double t = len2 > 0.0 ? (p - a).dot(ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const Vec2 q = a + t * ab;
  return {q, t, (p - q).norm()};
}

}  // namespace stirpour

#endif  // STIRPOUR_GEOMETRY_HPP
