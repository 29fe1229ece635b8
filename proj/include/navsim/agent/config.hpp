#pragma once

#include <optional>
#include <string>

#include "navsim/common/types.hpp"
#include "navsim/control/mpc.hpp"
#include "navsim/control/pi.hpp"
#include "navsim/decision/mdp.hpp"
#include "navsim/decision/uct.hpp"
#include "navsim/localization/ekf.hpp"
#include "navsim/perception/detector.hpp"
#include "navsim/risk/obstacle_monitor.hpp"

namespace navsim::agent {

/// Traffic-light lookup gates for tracks without the full object feed,
/// standing in for a camera-based light detector.
struct LightDetectorConfig {
  double range_m = 35.0;
  double fov_deg = 120.0;
};

struct ForecastConfig {
  double horizon_s = 4.0;
  double dt_s = 0.5;
};

/// Filter tuning matched to the stock GPS rig: heading comes from two
/// sigma 0.5 m receivers on a 2.85 m baseline, which carries about
/// 0.25 rad of noise. Trusting it tighter makes the estimate chase the
/// pair jitter and the controller steer into real lateral excursions.
inline localization::EkfConfig agent_ekf_defaults() {
  localization::EkfConfig e;
  e.measurement_noise = Eigen::Vector3d(0.25, 0.25, 0.0625).asDiagonal();
  return e;
}

/// Everything the agent can be tuned with. Scenario facts (route, speed
/// limit, vehicle geometry) stay out; they come from the scenario itself.
struct AgentConfig {
  std::optional<TrackMode> track;  // overrides the scenario's mode
  double control_rate_hz = 20.0;
  double decision_rate_hz = 1.0;

  localization::EkfConfig ekf = agent_ekf_defaults();
  perception::DetectorConfig detector;
  double vscan_dot_threshold = 0.985;  // depth ground suppression
  risk::ZoneConfig zones;
  ForecastConfig forecast;
  decision::MdpParams mdp;  // dt and v_limit are derived at runtime
  decision::UctParams uct;
  int uct_budget = 4096;
  control::MpcParams mpc;
  control::PiParams pi;
  LightDetectorConfig lights;
};

/// Validates cross-field rules (positive rates, decision rate not above
/// the control rate, positive budget). Throws std::invalid_argument.
void validate(const AgentConfig& cfg);

/// Parses a config from JSON text; every field is optional and defaults
/// to the values above. Unknown fields are rejected with their path.
AgentConfig parse_agent_config(const std::string& text,
                               const std::string& origin = "<memory>");

AgentConfig load_agent_config(const std::string& path);

}  // namespace navsim::agent
