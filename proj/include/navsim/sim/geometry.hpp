#pragma once

#include <array>
#include <span>

#include "navsim/common/types.hpp"

namespace navsim::sim {

/// Footprint rectangle: pose marks the center, length runs along the
/// pose heading.
struct OrientedRect {
  Pose2D pose;
  double length = 0.0;
  double width = 0.0;
};

std::array<Vec2, 4> rect_corners(const OrientedRect& r);

/// Separating-axis overlap test; touching rectangles count as overlapping.
bool rects_overlap(const OrientedRect& a, const OrientedRect& b);

/// Even-odd rule; points on the boundary may fall on either side.
bool point_in_polygon(const Vec2& p, std::span<const Vec2> poly);

bool segments_intersect(const Vec2& a0, const Vec2& a1, const Vec2& b0,
                        const Vec2& b1);

/// True when the motion a0 -> a1 crosses the line segment l0-l1. Half-open
/// on the start side: a step that lands exactly on the line counts, the
/// following step starting there does not, so one crossing is never
/// reported twice.
bool segment_crosses_line(const Vec2& a0, const Vec2& a1, const Vec2& l0,
                          const Vec2& l1);

bool rect_polygon_overlap(const OrientedRect& r, std::span<const Vec2> poly);

struct PolylineHit {
  double distance = 0.0;  // to the closest segment point
  Vec2 tangent;           // unit direction of the closest segment
};

/// Closest approach of p to the polyline. Requires >= 2 points.
PolylineHit polyline_distance(std::span<const Vec2> pts, const Vec2& p);

}  // namespace navsim::sim
