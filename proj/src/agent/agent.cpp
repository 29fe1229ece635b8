#include "navsim/agent/agent.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "navsim/common/rng.hpp"
#include "navsim/control/mpc.hpp"
#include "navsim/control/pi.hpp"
#include "navsim/decision/uct.hpp"
#include "navsim/perception/detector.hpp"
#include "navsim/risk/obstacle_monitor.hpp"

namespace navsim::agent {

namespace {

using clock_type = std::chrono::steady_clock;

double ms_since(clock_type::time_point t0) {
  return std::chrono::duration<double, std::milli>(clock_type::now() - t0)
      .count();
}

std::vector<perception::ObstacleBox> to_world(
    std::vector<perception::ObstacleBox> boxes, const Pose2D& pose) {
  for (auto& b : boxes) {
    const Vec2 c = pose.transform({b.cx, b.cy});
    b.cx = c.x;
    b.cy = c.y;
    b.yaw = normalize_angle(b.yaw + pose.theta);
  }
  return boxes;
}

// A light belongs to this route when its stop line sits on the path and
// has not been left more than half a meter behind.
constexpr double kLightLateralGate = 6.0;
constexpr double kLightBehindGate = -0.5;

// Driving starts only once the filter has averaged enough fixes; moving
// on the first noisy pair heading steers a real excursion off the lane.
// At the stock 10 Hz GPS these bounds release after about three seconds.
constexpr double kReadyPosVar = 0.06;      // P_xx + P_yy, m^2
constexpr double kReadyHeadingVar = 0.002; // P_theta, rad^2

}  // namespace

Agent::Agent(const AgentConfig& cfg, const AgentEnv& env, TrackMode track,
             std::uint64_t seed)
    : cfg_(cfg),
      track_(track),
      path_(planner::densify_route(env.route)),
      ekf_(cfg.ekf, env.anchor),
      wheelbase_(env.wheelbase),
      max_steer_(env.max_steer),
      seed_(seed) {
  validate(cfg_);
  mdp_ = cfg_.mdp;
  mdp_.dt = 1.0 / cfg_.decision_rate_hz;
  mdp_.v_limit = env.speed_limit_mps;

  // Speed signs apply from their projection onto the route onward.
  for (const auto& sign : env.speed_signs) {
    const auto proj = planner::project_to_path(sign.position, path_);
    if (std::abs(proj.lateral) <= 10.0)
      sign_marks_.emplace_back(proj.s, sign.limit_mps);
  }
  std::sort(sign_marks_.begin(), sign_marks_.end());

  ticks_per_decision_ = std::max(
      1, static_cast<int>(
             std::lround(cfg_.control_rate_hz / cfg_.decision_rate_hz)));
}

std::optional<Pose2D> Agent::pose_estimate() const {
  if (!ekf_.state()) return std::nullopt;
  return ekf_.state()->pose();
}

void Agent::ingest_obstacles(const SensorFrame& frame, const Pose2D& pose) {
  switch (track_) {
    case TrackMode::Track1:
    case TrackMode::Track3: {
      if (!frame.lidar) return;
      counters_.lidar_frames++;
      counters_.perception_calls++;
      obstacles_ =
          to_world(perception::detect_obstacles(*frame.lidar, cfg_.detector),
                   pose);
      break;
    }
    case TrackMode::Track2: {
      if (!frame.depth) return;
      counters_.depth_frames++;
      counters_.perception_calls++;
      const auto filtered =
          perception::virtual_scan_filter(*frame.depth, cfg_.vscan_dot_threshold);
      obstacles_ = to_world(
          perception::detect_obstacles(perception::depth_to_cloud(filtered),
                                       cfg_.detector),
          pose);
      break;
    }
    case TrackMode::Track4: {
      if (!frame.objects) return;
      counters_.truth_object_reads++;
      obstacles_.clear();
      obstacles_.reserve(frame.objects->objects.size());
      for (const auto& o : frame.objects->objects) {
        perception::ObstacleBox b;
        b.cx = o.pose.x;
        b.cy = o.pose.y;
        b.yaw = o.pose.theta;
        b.length = o.length;
        b.width = o.width;
        b.height = o.height;
        b.velocity = o.velocity;
        obstacles_.push_back(b);
      }
      break;
    }
  }
}

void Agent::ingest_lights(const SensorFrame& frame) {
  // The object feed doubles as the traffic-light detector in every track;
  // the runner strips it down to lights for tracks 1-3.
  if (!frame.objects) return;
  lights_ = frame.objects->lights;
}

decision::MdpState Agent::assemble_state(double v, double s_ego) const {
  decision::MdpState s;
  s.v = v;
  for (const auto& l : lights_) {
    const Vec2 mid = (l.stop_line[0] + l.stop_line[1]) * 0.5;
    const auto proj = planner::project_to_path(mid, path_);
    if (std::abs(proj.lateral) > kLightLateralGate) continue;
    const double ds = proj.s - s_ego;
    if (ds < kLightBehindGate) continue;
    const double d = std::max(0.0, ds);
    if (d < s.d_phi) {
      s.d_phi = d;
      s.phi = l.color;
    }
  }
  return s;
}

AgentCommand Agent::tick(const SensorFrame& frame) {
  timings_.ticks++;

  const localization::ControlInput can{frame.can_v, frame.can_kappa, frame.dt};
  auto t0 = clock_type::now();
  const auto est = frame.gps
                       ? ekf_.localize(frame.gps->back, frame.gps->front, can)
                       : ekf_.predict_only(can);
  timings_.localization_ms += ms_since(t0);
  if (!est) return {};  // hold still until the filter locks
  if (!ready_) {
    ready_ = est->cov(0, 0) + est->cov(1, 1) <= kReadyPosVar &&
             est->cov(2, 2) <= kReadyHeadingVar;
    if (!ready_) return {};
  }

  const Pose2D pose = est->pose();

  t0 = clock_type::now();
  ingest_obstacles(frame, pose);
  ingest_lights(frame);
  timings_.perception_ms += ms_since(t0);

  const auto proj = planner::project_to_path(pose.position(), path_);
  const double s_ego = proj.s;
  while (next_sign_ < sign_marks_.size() &&
         s_ego >= sign_marks_[next_sign_].first) {
    mdp_.v_limit = sign_marks_[next_sign_].second;
    ++next_sign_;
  }

  t0 = clock_type::now();
  risk::MonitorConfig mon;
  mon.zones = risk::zones_for_speed(frame.can_v, cfg_.zones);
  mon.horizon = cfg_.forecast.horizon_s;
  mon.dt = cfg_.forecast.dt_s;
  const auto conflicts = risk::detect_conflicts(path_, pose, obstacles_, mon);
  const bool danger =
      !conflicts.empty() && conflicts.front().zone == risk::Zone::Danger;
  timings_.risk_ms += ms_since(t0);

  decision::MdpState state = assemble_state(frame.can_v, s_ego);
  if (!conflicts.empty()) state.d_v = conflicts.front().dtc;

  t0 = clock_type::now();
  if (tick_index_ % ticks_per_decision_ == 0) {
    action_ = decision::plan_action(
        state, mdp_, cfg_.uct_budget,
        splitmix64(seed_ + static_cast<std::uint64_t>(counters_.decisions)),
        cfg_.uct);
    counters_.decisions++;
  }
  ++tick_index_;
  timings_.decision_ms += ms_since(t0);

  // The chosen action integrates into a speed setpoint, never above the
  // current reference (limit, red light and lead vehicle aware).
  const double vref = decision::reference_speed(state, mdp_);
  v_target_ =
      std::clamp(v_target_ + decision::action_accel(action_) * frame.dt, 0.0,
                 vref);

  AgentCommand out;
  out.action = action_;
  out.localized = true;

  t0 = clock_type::now();
  if (danger) {
    // Reflexive override: the tactical layer is too slow for an obstacle
    // already inside the danger zone.
    v_target_ = 0.0;
    pi_integral_ = 0.0;
    out.longitudinal = -1.0;
    out.danger_brake = true;
  } else {
    const auto pi = control::pi_speed_control(v_target_, frame.can_v, cfg_.pi,
                                              pi_integral_, frame.dt);
    out.longitudinal = pi.command;
    pi_integral_ = pi.integral;
  }
  out.v_target = v_target_;

  VehicleState ego;
  ego.pose = pose;
  ego.v = frame.can_v;
  ego.wheelbase = wheelbase_;
  ego.kappa = frame.can_kappa;
  ego.steer = std::atan(frame.can_kappa * wheelbase_);

  // Plan steering at the faster of setpoint and actual speed so the
  // preview still covers the path while braking, but never past the
  // route end.
  const double remaining = std::max(0.0, path_.length() - s_ego);
  const double v_plan = std::min(std::max(v_target_, frame.can_v),
                                 remaining / cfg_.mpc.horizon);
  const auto sol = control::mpc_solve(ego, path_, v_plan, cfg_.mpc,
                                      warm_.empty() ? nullptr : &warm_);
  warm_ = sol.tau;
  out.steer =
      control::steering_from_solution(sol, ego, cfg_.mpc, max_steer_, frame.dt);
  timings_.control_ms += ms_since(t0);

  return out;
}

}  // namespace navsim::agent
