#pragma once

#include <optional>
#include <vector>

#include "navsim/common/types.hpp"
#include "navsim/perception/box_fit.hpp"
#include "navsim/planner/path.hpp"

namespace navsim::risk {

enum class Zone { Danger, Warning, Safe };

/// Corridor zones along the planned path, measured in arc length ahead of
/// the ego projection.
struct ZoneConfig {
  double danger_end = 5.0;
  double warning_end = 15.0;
  double corridor_halfwidth = 1.5;   // lateral reach of the monitor
  double proximity_threshold = 1.0;  // box-to-path distance meaning conflict
};

/// Scales the zone ends with speed (reaction-distance style) while never
/// shrinking below the standstill defaults in `base`.
ZoneConfig zones_for_speed(double v, const ZoneConfig& base = {});

/// Throws std::invalid_argument unless 0 < danger_end < warning_end.
Zone classify_zone(double dtc, const ZoneConfig& cfg);

struct Conflict {
  size_t obstacle = 0;  // index into the monitored obstacle list
  Zone zone = Zone::Safe;
  double dtc = 0.0;     // arc length from ego to the conflict point
  /// Prediction time at which the conflict appears; empty when the
  /// obstacle's current box already conflicts or it has no velocity.
  std::optional<double> time_of_conflict;
};

/// Distance from a point to the box edge (zero inside the footprint).
double box_edge_distance(const perception::ObstacleBox& box, const Vec2& p);

/// Constant-velocity forecast at times dt, 2*dt, ..., up to the horizon.
/// A box without velocity forecasts in place. Throws std::invalid_argument
/// on non-positive horizon or dt.
std::vector<perception::ObstacleBox> predict_positions(
    const perception::ObstacleBox& box, double horizon, double dt);

struct MonitorConfig {
  ZoneConfig zones;      // already speed-scaled by the caller
  double horizon = 4.0;  // forecast window, seconds
  double dt = 0.5;       // forecast step, seconds
};

/// Tests each obstacle's current box and forecasts against the path ahead
/// of the ego projection. An obstacle conflicts when any of its boxes comes
/// within the proximity threshold of a path sample at or beyond the ego.
/// Output is sorted by dtc, ties by obstacle index.
std::vector<Conflict> detect_conflicts(
    const planner::DensePath& path, const Pose2D& ego,
    const std::vector<perception::ObstacleBox>& obstacles,
    const MonitorConfig& cfg);

}  // namespace navsim::risk
