#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "navsim/common/types.hpp"
#include "navsim/sim/geometry.hpp"
#include "navsim/sim/scenario.hpp"

namespace navsim::sim {

enum class InfractionKind {
  HitStatic,
  HitVehicle,
  HitPedestrian,
  RedLight,
  OppositeLane,
  Sidewalk,
  StopSign,
};

/// Penalty points discounted from the route score.
int infraction_points(InfractionKind k);

/// Stable identifier used in logs and reports.
const char* infraction_name(InfractionKind k);

/// Inverse of infraction_name. Throws std::invalid_argument on an
/// unknown identifier.
InfractionKind infraction_kind_from_name(const std::string& name);

struct InfractionEvent {
  InfractionKind kind = InfractionKind::HitStatic;
  double time = 0.0;
  int points = 0;
  int actor = -1;  // offending actor index for collisions, -1 otherwise
};

struct ActorState {
  Pose2D pose;
  Vec2 velocity;  // world frame
  double speed = 0.0;
  bool active = false;
  double activated_at = 0.0;
};

/// World snapshot. The ego pose marks the footprint center; time always
/// equals step * sim_dt. Infraction episode flags live here so stepping
/// stays a pure value-to-value function.
struct SimWorld {
  std::shared_ptr<const ScenarioConfig> scenario;
  long step = 0;
  double time = 0.0;
  VehicleState ego;
  std::vector<ActorState> actors;
  std::vector<LightColor> lights;
  std::vector<InfractionEvent> events;

  std::vector<char> colliding;  // per actor, current overlap episode
  char on_sidewalk = 0;
  char in_opposite = 0;
  std::optional<Vec2> last_standstill;  // ego center at the last v <= 0.1
};

struct EgoCommand {
  double longitudinal = 0.0;  // [-1, 1]; positive throttle, negative brake
  double steer = 0.0;         // front-wheel angle command, radians
};

/// World at time zero: ego at the scenario start, untriggered actors
/// inactive, lights per their schedules.
SimWorld make_world(std::shared_ptr<const ScenarioConfig> sc);

/// Schedule lookup: green -> yellow -> red cycle shifted by the offset.
LightColor light_color_at(const LightSpec& l, double t);

/// Pose of a scripted or constant-velocity actor after t_local seconds of
/// activity. Scripted keyframes interpolate linearly and hold at the end.
Pose2D actor_pose_at(const ActorSpec& spec, double t_local,
                     Vec2* velocity = nullptr);

/// One fixed time step: ego command -> acceleration and steering, actors
/// advance, lights follow their schedules, trigger actors activate, and
/// new infraction events are appended.
SimWorld step_world(const SimWorld& w, const EgoCommand& cmd, double dt);

OrientedRect ego_rect(const SimWorld& w);
OrientedRect actor_rect(const ActorState& s, const ActorSpec& spec);

}  // namespace navsim::sim
