#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "navsim/common/geo.hpp"
#include "navsim/localization/ekf.hpp"
#include "navsim/perception/depth.hpp"
#include "navsim/sim/world.hpp"

namespace navsim::sim {

struct GpsFix {
  double time = 0.0;
  GeoPoint back;
  GeoPoint front;
};

struct ObjectTruth {
  ActorType type = ActorType::Vehicle;
  Pose2D pose;
  Vec2 velocity;
  double length = 0.0;
  double width = 0.0;
  double height = 0.0;
  int actor = -1;
};

struct LightTruth {
  Vec2 position;
  std::array<Vec2, 2> stop_line{};
  LightColor color = LightColor::None;
  int light = -1;
};

struct GroundTruthObjects {
  double time = 0.0;
  std::vector<ObjectTruth> objects;
  std::vector<LightTruth> lights;
};

/// Deterministic sensor synthesis over a world snapshot. Noise streams
/// are seeded per (scenario seed, sensor, frame index), so a frame's
/// bytes never depend on which other sensors were sampled.
class SensorRig {
 public:
  explicit SensorRig(std::shared_ptr<const ScenarioConfig> sc);

  /// UTM plane the world frame is pinned to (world 0,0 = scenario anchor).
  const localization::GeoAnchor& anchor() const { return anchor_; }

  /// Both receivers with additive position noise, in geodetic coordinates.
  GpsFix sense_gps(const SimWorld& w, std::uint64_t frame) const;

  /// Spinning ray-cast sweep against the ground plane and active actor
  /// boxes. Points are in the vehicle frame, z up from the ground; no
  /// intensity or ring data.
  PointCloud sense_lidar(const SimWorld& w) const;

  /// Ideal z-depth image from the forward camera, with optional
  /// multiplicative noise. Pixels that see nothing read zero.
  perception::DepthImage sense_depth(const SimWorld& w, std::uint64_t frame) const;

  /// Exact state of actors and lights within range of the ego and inside
  /// the forward field of view (radians; 2*pi means all around).
  GroundTruthObjects sense_objects(const SimWorld& w, double range_m,
                                   double fov_rad) const;

 private:
  std::shared_ptr<const ScenarioConfig> sc_;
  localization::GeoAnchor anchor_;
  double noise_scale_ = 1.0;
  std::uint64_t gps_seed_ = 0;
  std::uint64_t camera_seed_ = 0;
};

}  // namespace navsim::sim
