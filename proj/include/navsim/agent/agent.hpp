#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "navsim/agent/config.hpp"
#include "navsim/localization/ekf.hpp"
#include "navsim/planner/path.hpp"
#include "navsim/sim/scenario.hpp"
#include "navsim/sim/sensors.hpp"

namespace navsim::agent {

/// Static route-book data the driver gets before the run: the route and
/// what a map or vehicle datasheet would legitimately provide. World
/// state never flows through here.
struct AgentEnv {
  planner::Route route;
  localization::GeoAnchor anchor;
  double speed_limit_mps = 8.33;
  double wheelbase = 2.85;
  double max_steer = 0.55;
  std::vector<sim::SpeedSignSpec> speed_signs;
};

/// Sensor data for one control tick. Empty optionals mean the sensor did
/// not emit this tick or the track mode lacks it. can_v / can_kappa are
/// the vehicle-bus speed and curvature readings.
struct SensorFrame {
  double time = 0.0;
  double dt = 0.05;  // control period
  std::optional<sim::GpsFix> gps;
  std::optional<PointCloud> lidar;
  std::optional<perception::DepthImage> depth;
  std::optional<sim::GroundTruthObjects> objects;
  double can_v = 0.0;
  double can_kappa = 0.0;
};

struct AgentCommand {
  double longitudinal = 0.0;  // [-1, 1]
  double steer = 0.0;         // radians
  decision::MdpAction action = decision::MdpAction::StayConstant;
  double v_target = 0.0;
  bool danger_brake = false;
  bool localized = false;
};

/// Modality usage counters; the track-mode isolation contract is asserted
/// against these in tests.
struct AgentCounters {
  long lidar_frames = 0;
  long depth_frames = 0;
  long perception_calls = 0;
  long truth_object_reads = 0;
  long decisions = 0;
};

/// Accumulated wall-clock per pipeline stage. Diagnostic only; never feeds
/// back into behavior, so runs stay deterministic.
struct ModuleTimings {
  double localization_ms = 0.0;
  double perception_ms = 0.0;
  double risk_ms = 0.0;
  double decision_ms = 0.0;
  double control_ms = 0.0;
  long ticks = 0;
};

/// The driving stack: localization -> perception -> risk -> decision ->
/// control, wired per track mode.
///   track1/track3: obstacles from LiDAR clouds
///   track2:        obstacles from depth images (virtual-scan filtered)
///   track4:        obstacles straight from the object feed
/// Traffic lights always come from the object feed (the stand-in for the
/// light detector); in tracks 1-3 the runner gates it to detector range.
class Agent {
 public:
  Agent(const AgentConfig& cfg, const AgentEnv& env, TrackMode track,
        std::uint64_t seed);

  /// One control tick. Returns zero commands until localization locks.
  AgentCommand tick(const SensorFrame& frame);

  const planner::DensePath& path() const { return path_; }
  const AgentCounters& counters() const { return counters_; }
  const ModuleTimings& timings() const { return timings_; }
  TrackMode track() const { return track_; }
  /// Current pose estimate, empty before the filter initializes.
  std::optional<Pose2D> pose_estimate() const;

 private:
  void ingest_obstacles(const SensorFrame& frame, const Pose2D& pose);
  void ingest_lights(const SensorFrame& frame);
  decision::MdpState assemble_state(double v, double s_ego) const;

  AgentConfig cfg_;
  TrackMode track_;
  planner::DensePath path_;
  localization::GpsEkf ekf_;
  double wheelbase_;
  double max_steer_;
  std::uint64_t seed_;

  decision::MdpParams mdp_;  // v_limit kept current with passed signs
  std::vector<std::pair<double, double>> sign_marks_;  // (arc length, limit)
  size_t next_sign_ = 0;

  int ticks_per_decision_;
  bool ready_ = false;  // localization converged, driving released
  long tick_index_ = 0;
  decision::MdpAction action_ = decision::MdpAction::StayConstant;
  double v_target_ = 0.0;
  double pi_integral_ = 0.0;
  std::vector<double> warm_;

  std::vector<perception::ObstacleBox> obstacles_;  // world frame
  std::vector<sim::LightTruth> lights_;

  AgentCounters counters_;
  ModuleTimings timings_;
};

}  // namespace navsim::agent
