#include "navsim/sim/world.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "navsim/sim/infractions.hpp"

namespace navsim::sim {

int infraction_points(InfractionKind k) {
  switch (k) {
    case InfractionKind::HitStatic: return 6;
    case InfractionKind::HitVehicle: return 6;
    case InfractionKind::HitPedestrian: return 9;
    case InfractionKind::RedLight: return 3;
    case InfractionKind::OppositeLane: return 2;
    case InfractionKind::Sidewalk: return 2;
    case InfractionKind::StopSign: return 2;
  }
  throw std::invalid_argument("bad infraction kind");
}

const char* infraction_name(InfractionKind k) {
  switch (k) {
    case InfractionKind::HitStatic: return "hit_static";
    case InfractionKind::HitVehicle: return "hit_vehicle";
    case InfractionKind::HitPedestrian: return "hit_pedestrian";
    case InfractionKind::RedLight: return "red_light";
    case InfractionKind::OppositeLane: return "opposite_lane";
    case InfractionKind::Sidewalk: return "sidewalk";
    case InfractionKind::StopSign: return "stop_sign";
  }
  throw std::invalid_argument("bad infraction kind");
}

InfractionKind infraction_kind_from_name(const std::string& name) {
  for (const auto k :
       {InfractionKind::HitStatic, InfractionKind::HitVehicle,
        InfractionKind::HitPedestrian, InfractionKind::RedLight,
        InfractionKind::OppositeLane, InfractionKind::Sidewalk,
        InfractionKind::StopSign}) {
    if (name == infraction_name(k)) return k;
  }
  throw std::invalid_argument("unknown infraction: " + name);
}

LightColor light_color_at(const LightSpec& l, double t) {
  const double cycle = l.green_s + l.yellow_s + l.red_s;
  double u = std::fmod(t + l.offset_s, cycle);
  if (u < 0.0) u += cycle;
  if (u < l.green_s) return LightColor::Green;
  if (u < l.green_s + l.yellow_s) return LightColor::Yellow;
  return LightColor::Red;
}

Pose2D actor_pose_at(const ActorSpec& spec, double t_local, Vec2* velocity) {
  if (velocity) *velocity = {0.0, 0.0};
  if (spec.trajectory.empty()) {
    // Constant velocity along the initial heading.
    const Vec2 dir = spec.pose.heading();
    if (velocity) *velocity = dir * spec.speed;
    Pose2D p = spec.pose;
    p.x += dir.x * spec.speed * t_local;
    p.y += dir.y * spec.speed * t_local;
    return p;
  }
  const auto& keys = spec.trajectory;
  if (t_local <= keys.front().t) return keys.front().pose;
  if (t_local >= keys.back().t) return keys.back().pose;
  size_t i = 0;
  while (keys[i + 1].t < t_local) ++i;
  const TrajectoryKey& a = keys[i];
  const TrajectoryKey& b = keys[i + 1];
  const double span = b.t - a.t;
  const double alpha = (t_local - a.t) / span;
  if (velocity)
    *velocity = {(b.pose.x - a.pose.x) / span, (b.pose.y - a.pose.y) / span};
  Pose2D p;
  p.x = a.pose.x + (b.pose.x - a.pose.x) * alpha;
  p.y = a.pose.y + (b.pose.y - a.pose.y) * alpha;
  p.theta = normalize_angle(a.pose.theta +
                            normalize_angle(b.pose.theta - a.pose.theta) * alpha);
  return p;
}

OrientedRect ego_rect(const SimWorld& w) {
  const EgoSpec& e = w.scenario->ego;
  return {w.ego.pose, e.length, e.width};
}

OrientedRect actor_rect(const ActorState& s, const ActorSpec& spec) {
  return {s.pose, spec.length, spec.width};
}

SimWorld make_world(std::shared_ptr<const ScenarioConfig> sc) {
  if (!sc) throw std::invalid_argument("null scenario");
  SimWorld w;
  w.scenario = std::move(sc);
  w.ego.pose = w.scenario->ego.start;
  w.ego.wheelbase = w.scenario->ego.wheelbase;
  w.actors.resize(w.scenario->actors.size());
  w.colliding.assign(w.scenario->actors.size(), 0);
  for (size_t i = 0; i < w.actors.size(); ++i) {
    const ActorSpec& spec = w.scenario->actors[i];
    ActorState& st = w.actors[i];
    st.active = spec.trigger_distance <= 0.0;
    st.activated_at = 0.0;
    st.pose = actor_pose_at(spec, 0.0, &st.velocity);
    if (!st.active) st.velocity = {0.0, 0.0};
    st.speed = st.velocity.norm();
  }
  w.lights.reserve(w.scenario->lights.size());
  for (const LightSpec& l : w.scenario->lights)
    w.lights.push_back(light_color_at(l, 0.0));
  return w;
}

SimWorld step_world(const SimWorld& w, const EgoCommand& cmd, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  const ScenarioConfig& sc = *w.scenario;
  SimWorld next = w;
  next.step = w.step + 1;
  next.time = static_cast<double>(next.step) * dt;

  // Ego: linear command-to-acceleration map, curvature from the front
  // wheel angle, pre-step speed moves the pose (plain Euler).
  const double c = std::clamp(cmd.longitudinal, -1.0, 1.0);
  const double accel = c >= 0.0 ? c * sc.ego.throttle_accel : c * sc.ego.brake_accel;
  const double steer = std::clamp(cmd.steer, -sc.ego.max_steer, sc.ego.max_steer);
  next.ego.set_steer(steer);
  const double v = w.ego.v;
  next.ego.pose.x += v * std::cos(w.ego.pose.theta) * dt;
  next.ego.pose.y += v * std::sin(w.ego.pose.theta) * dt;
  next.ego.pose.theta = normalize_angle(w.ego.pose.theta + v * next.ego.kappa * dt);
  next.ego.v = std::max(0.0, v + accel * dt);

  // Actors: trigger inactive ones on ego proximity, advance active ones.
  for (size_t i = 0; i < next.actors.size(); ++i) {
    const ActorSpec& spec = sc.actors[i];
    ActorState& st = next.actors[i];
    if (!st.active) {
      if (distance(next.ego.pose.position(), spec.pose.position()) <=
          spec.trigger_distance) {
        st.active = true;
        st.activated_at = next.time;
      } else {
        continue;
      }
    }
    st.pose = actor_pose_at(spec, next.time - st.activated_at, &st.velocity);
    st.speed = st.velocity.norm();
  }

  for (size_t i = 0; i < next.lights.size(); ++i)
    next.lights[i] = light_color_at(sc.lights[i], next.time);

  const auto events = detect_infractions(w, next);
  next.events.insert(next.events.end(), events.begin(), events.end());
  return next;
}

}  // namespace navsim::sim
