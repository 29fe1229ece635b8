#pragma once

#include <cstddef>
#include <vector>

#include "navsim/common/types.hpp"

namespace navsim::planner {

/// High-level maneuver attached to a sparse route waypoint.
enum class Command {
  Straight,
  TurnLeft,
  TurnRight,
  ChangeLaneLeft,
  ChangeLaneRight,
};

/// Sparse route as handed to the agent: waypoints in the world frame plus
/// an optional per-waypoint maneuver command (empty or one per waypoint).
struct Route {
  std::vector<Vec2> waypoints;
  std::vector<Command> commands;
};

struct PathSample {
  double s = 0.0;          // arc length from the route start, meters
  double x = 0.0;
  double y = 0.0;
  double theta_ref = 0.0;  // tangent heading in (-pi, pi]
  double kappa_ref = 0.0;  // signed curvature, 1/m
};

/// Densified route: samples strictly increasing in s, first at s = 0 and
/// last at the total length.
struct DensePath {
  std::vector<PathSample> samples;

  double length() const { return samples.empty() ? 0.0 : samples.back().s; }
};

/// Fits a natural cubic spline through the waypoints (parametrized by
/// cumulative chord length) and resamples it at uniform arc-length steps
/// no wider than `spacing`. Consecutive duplicate waypoints are dropped.
/// Throws std::invalid_argument on fewer than two distinct waypoints or a
/// non-positive spacing.
DensePath densify_route(const Route& route, double spacing = 0.5);

struct PathProjection {
  double s = 0.0;        // arc length of the closest point on the path
  double lateral = 0.0;  // signed offset, positive to the left of the path
  size_t index = 0;      // index of the sample at or before the projection
};

/// Closest-point projection of p onto the densified path.
/// Throws std::invalid_argument on a path with fewer than two samples.
PathProjection project_to_path(const Vec2& p, const DensePath& path);

/// Interpolated sample at arc length s, clamped to [0, length].
PathSample sample_at(const DensePath& path, double s);

}  // namespace navsim::planner
