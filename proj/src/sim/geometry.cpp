#include "navsim/sim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace navsim::sim {
namespace {

/// Projects both rectangles onto the given axis and reports whether the
/// intervals are disjoint.
bool separated_on(const Vec2& axis, const std::array<Vec2, 4>& a,
                  const std::array<Vec2, 4>& b) {
  double amin = 1e300, amax = -1e300, bmin = 1e300, bmax = -1e300;
  for (const Vec2& p : a) {
    const double d = p.dot(axis);
    amin = std::min(amin, d);
    amax = std::max(amax, d);
  }
  for (const Vec2& p : b) {
    const double d = p.dot(axis);
    bmin = std::min(bmin, d);
    bmax = std::max(bmax, d);
  }
  return amax < bmin || bmax < amin;
}

int orientation(const Vec2& a, const Vec2& b, const Vec2& c) {
  const double v = (b - a).cross(c - a);
  if (v > 1e-12) return 1;
  if (v < -1e-12) return -1;
  return 0;
}

bool on_segment(const Vec2& a, const Vec2& b, const Vec2& p) {
  return std::min(a.x, b.x) - 1e-12 <= p.x && p.x <= std::max(a.x, b.x) + 1e-12 &&
         std::min(a.y, b.y) - 1e-12 <= p.y && p.y <= std::max(a.y, b.y) + 1e-12;
}

}  // namespace

std::array<Vec2, 4> rect_corners(const OrientedRect& r) {
  const double hl = r.length / 2.0, hw = r.width / 2.0;
  return {r.pose.transform({hl, hw}), r.pose.transform({hl, -hw}),
          r.pose.transform({-hl, -hw}), r.pose.transform({-hl, hw})};
}

bool rects_overlap(const OrientedRect& a, const OrientedRect& b) {
  const auto ca = rect_corners(a);
  const auto cb = rect_corners(b);
  const Vec2 axes[4] = {a.pose.heading(),
                        {-a.pose.heading().y, a.pose.heading().x},
                        b.pose.heading(),
                        {-b.pose.heading().y, b.pose.heading().x}};
  for (const Vec2& axis : axes)
    if (separated_on(axis, ca, cb)) return false;
  return true;
}

bool point_in_polygon(const Vec2& p, std::span<const Vec2> poly) {
  bool inside = false;
  const size_t n = poly.size();
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_cross = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
      if (p.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

bool segments_intersect(const Vec2& a0, const Vec2& a1, const Vec2& b0,
                        const Vec2& b1) {
  const int o1 = orientation(a0, a1, b0);
  const int o2 = orientation(a0, a1, b1);
  const int o3 = orientation(b0, b1, a0);
  const int o4 = orientation(b0, b1, a1);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a0, a1, b0)) return true;
  if (o2 == 0 && on_segment(a0, a1, b1)) return true;
  if (o3 == 0 && on_segment(b0, b1, a0)) return true;
  if (o4 == 0 && on_segment(b0, b1, a1)) return true;
  return false;
}

bool segment_crosses_line(const Vec2& a0, const Vec2& a1, const Vec2& l0,
                          const Vec2& l1) {
  const Vec2 d = l1 - l0;
  const double f0 = d.cross(a0 - l0);
  const double f1 = d.cross(a1 - l0);
  // Strict sign change, except that landing exactly on the line counts.
  // A step that then starts on the line (f0 == 0) does not re-fire.
  const bool crossed = (f0 < 0.0 && f1 >= 0.0) || (f0 > 0.0 && f1 <= 0.0);
  if (!crossed) return false;
  const double t = f0 / (f0 - f1);  // denominator nonzero: f0 != 0, signs differ
  const Vec2 x = a0 + (a1 - a0) * t;
  const double len2 = d.dot(d);
  if (len2 <= 0.0) return false;
  const double u = d.dot(x - l0) / len2;
  return u >= -1e-9 && u <= 1.0 + 1e-9;
}

bool rect_polygon_overlap(const OrientedRect& r, std::span<const Vec2> poly) {
  if (poly.size() < 3) return false;
  const auto corners = rect_corners(r);
  for (const Vec2& c : corners)
    if (point_in_polygon(c, poly)) return true;
  if (point_in_polygon(r.pose.position(), poly)) return true;
  for (size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    if (point_in_polygon(poly[i], std::span<const Vec2>(corners))) return true;
    for (size_t k = 0; k < 4; ++k)
      if (segments_intersect(corners[k], corners[(k + 1) % 4], poly[j], poly[i]))
        return true;
  }
  return false;
}

PolylineHit polyline_distance(std::span<const Vec2> pts, const Vec2& p) {
  if (pts.size() < 2) throw std::invalid_argument("polyline needs two points");
  PolylineHit best{1e300, {1.0, 0.0}};
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    const Vec2 a = pts[i];
    const Vec2 d = pts[i + 1] - a;
    const double len2 = d.dot(d);
    if (len2 <= 0.0) continue;
    const double t = std::clamp((p - a).dot(d) / len2, 0.0, 1.0);
    const Vec2 q = a + d * t;
    const double dist = distance(p, q);
    if (dist < best.distance) {
      const double len = std::sqrt(len2);
      best = {dist, {d.x / len, d.y / len}};
    }
  }
  return best;
}

}  // namespace navsim::sim
