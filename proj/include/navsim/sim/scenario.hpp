#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "navsim/common/geo.hpp"
#include "navsim/common/types.hpp"
#include "navsim/planner/path.hpp"

namespace navsim::sim {

enum class ActorType { Vehicle, Pedestrian, Static };

/// Timed pose keyframe of a scripted actor. Poses interpolate linearly
/// in position and along the shortest arc in heading; the pose holds at
/// the last keyframe. Times are relative to the actor's activation.
struct TrajectoryKey {
  double t = 0.0;
  Pose2D pose;
};

struct ActorSpec {
  ActorType type = ActorType::Vehicle;
  double length = 4.5;
  double width = 2.0;
  double height = 1.6;
  Pose2D pose;        // initial pose, world frame
  double speed = 0.0; // m/s along the initial heading when unscripted
  std::vector<TrajectoryKey> trajectory;
  /// When positive the actor stays out of the world until the ego center
  /// comes within this distance of the actor's initial position.
  double trigger_distance = 0.0;
};

/// Fixed-cycle traffic light. The cycle is green -> yellow -> red,
/// repeating; offset_s shifts the schedule (offset 0 starts green).
struct LightSpec {
  Vec2 position;
  std::array<Vec2, 2> stop_line{};
  double green_s = 10.0;
  double yellow_s = 3.0;
  double red_s = 10.0;
  double offset_s = 0.0;
};

/// Driving lane: centerline polyline plus width. Travel direction is the
/// polyline order.
struct LaneSpec {
  std::vector<Vec2> center;
  double width = 3.5;
};

struct StopSignSpec {
  std::array<Vec2, 2> line{};
};

struct SpeedSignSpec {
  Vec2 position;
  double limit_mps = 8.33;
};

struct MapSpec {
  std::vector<LaneSpec> lanes;
  std::vector<std::vector<Vec2>> sidewalks;  // convex or concave polygons
  std::vector<StopSignSpec> stop_signs;
  std::vector<SpeedSignSpec> speed_signs;
};

struct EgoSpec {
  Pose2D start;
  double length = 4.5;
  double width = 2.0;
  double wheelbase = 2.85;
  double max_steer = 0.55;        // radians
  double throttle_accel = 3.0;    // m/s^2 at full throttle
  double brake_accel = 6.0;       // m/s^2 at full brake
};

struct GpsSpec {
  double rate_hz = 10.0;
  double sigma_m = 0.5;
  Vec2 front_offset{1.425, 0.0};  // receiver mounts, vehicle frame
  Vec2 back_offset{-1.425, 0.0};
};

struct LidarSpec {
  double rate_hz = 20.0;
  int channels = 32;
  double upper_fov_deg = 15.0;
  double lower_fov_deg = -30.0;
  double max_range_m = 50.0;
  double points_per_second = 20000.0;
  double height_m = 2.4;  // mount height above ground
};

struct CameraSpec {
  double rate_hz = 10.0;
  int rows = 108;
  int cols = 216;
  double hfov_deg = 40.0;
  double height_m = 1.8;
  double noise_rel = 0.0;  // multiplicative depth noise std
};

struct ObjectsSpec {
  double rate_hz = 20.0;
  double range_m = 60.0;
  double fov_deg = 360.0;
};

struct SensorSuite {
  GpsSpec gps;
  LidarSpec lidar;
  CameraSpec camera;
  ObjectsSpec objects;
};

struct ScenarioConfig {
  std::string name;
  std::uint64_t seed = 0;
  TrackMode track_mode = TrackMode::Track4;
  double speed_limit_mps = 8.33;
  std::string weather = "clear";
  double timeout_s = 0.0;  // <= 0: derived from the route length
  double sim_dt = 0.05;
  GeoPoint geo_anchor{-22.0, -47.9, 0.0};  // world-frame origin
  EgoSpec ego;
  SensorSuite sensors;
  MapSpec map;
  planner::Route route;
  std::vector<ActorSpec> actors;
  std::vector<LightSpec> lights;
};

/// Sensor noise multiplier for a weather tag. Knows clear and cloudy
/// (1.0), rain (1.5) and fog (2.0); anything else is rejected by the
/// parser.
double weather_noise_scale(const std::string& weather);

/// Parses a scenario from JSON text. `origin` names the source in error
/// messages. Unknown fields are rejected; every semantic error carries
/// the offending field path.
ScenarioConfig parse_scenario(const std::string& text,
                              const std::string& origin = "<memory>");

/// Reads and parses a scenario file.
ScenarioConfig load_scenario(const std::string& path);

}  // namespace navsim::sim
