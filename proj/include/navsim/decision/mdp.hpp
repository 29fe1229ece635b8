#pragma once

#include <limits>
#include <random>

#include "navsim/common/types.hpp"

namespace navsim::decision {

// Longitudinal tactical state. Distances are along the route; use
// kNoTarget when there is no light / no vehicle ahead.
inline constexpr double kNoTarget = std::numeric_limits<double>::infinity();

struct MdpState {
  double v = 0.0;               // m/s, >= 0
  double d_phi = kNoTarget;     // m to next traffic light
  LightColor phi = LightColor::None;
  double d_v = kNoTarget;       // m to nearest obstacle on route
};

enum class MdpAction { Brake = 0, StayConstant = 1, Accelerate = 2 };

inline constexpr int kNumActions = 3;

// Commanded acceleration for each action, m/s^2.
double action_accel(MdpAction a);

struct MdpParams {
  double dt = 1.0;              // s per decision step
  double gamma = 0.95;
  double p1 = 0.05;             // GREEN -> YELLOW
  double p2 = 0.6;              // YELLOW -> RED
  double p3 = 0.05;             // RED -> GREEN
  double stop_dist_tl = 12.0;   // m, red-light stop trigger
  double stop_dist_veh = 2.0;   // m, vehicle stop trigger
  double v_limit = 8.33;        // m/s road limit
  double v_ref_margin = 0.3;    // m/s below the limit

  double v_max() const { return 1.2 * v_limit; }
};

// Deterministic part of the transition: speed integrates the action's
// acceleration (clamped to [0, 1.2*v_limit]) while both distances shrink
// by the distance travelled at the PRE-action speed. phi is untouched.
MdpState step_kinematics(const MdpState& s, MdpAction a, const MdpParams& p);

// One sample of the light's Markov chain. None is absorbing.
LightColor step_light(LightColor phi, const MdpParams& p, std::mt19937_64& rng);

// Full generative step: kinematics plus a sampled light transition.
MdpState mdp_step(const MdpState& s, MdpAction a, const MdpParams& p,
                  std::mt19937_64& rng);

// Target speed: zero when close behind a vehicle or approaching a red
// light, otherwise just under the limit.
double reference_speed(const MdpState& s, const MdpParams& p);

// Penalizes deviation from the reference speed; always <= 0.
double reward(const MdpState& s, const MdpParams& p);

}  // namespace navsim::decision
