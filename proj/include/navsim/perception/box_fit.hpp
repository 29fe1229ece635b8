#pragma once

#include <optional>
#include <span>
#include <vector>

#include "navsim/common/types.hpp"

namespace navsim::perception {

/// Oriented obstacle footprint plus height, in the frame of the cloud it
/// was fitted from.
struct ObstacleBox {
  double cx = 0.0;
  double cy = 0.0;
  double yaw = 0.0;     // direction of the length axis, kept in (-pi/2, pi/2]
  double length = 0.0;  // extent along yaw, >= width
  double width = 0.0;
  double height = 0.0;  // z spread of the source points
  std::optional<Vec2> velocity;  // filled by tracking layers, not by fitting

  Vec2 center() const { return {cx, cy}; }
};

/// Minimum-area oriented rectangle around the xy projection of the given
/// points (convex hull + edge sweep), with height taken from the z spread.
/// Footprint extents are clamped below at 0.1 m so degenerate clusters
/// still yield a usable box. Throws std::invalid_argument on empty input.
ObstacleBox fit_box(const PointCloud& cloud, std::span<const size_t> indices);

/// Same fit over the whole cloud.
ObstacleBox fit_box(const PointCloud& cloud);

}  // namespace navsim::perception
