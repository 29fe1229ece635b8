#include "navsim/decision/mdp.hpp"

#include <algorithm>
#include <cmath>

namespace navsim::decision {

double action_accel(MdpAction a) {
  switch (a) {
    case MdpAction::Brake:
      return -4.0;
    case MdpAction::StayConstant:
      return 0.0;
    case MdpAction::Accelerate:
      return 2.0;
  }
  return 0.0;
}

MdpState step_kinematics(const MdpState& s, MdpAction a, const MdpParams& p) {
  MdpState out = s;
  const double travelled = s.v * p.dt;
  out.v = std::clamp(s.v + action_accel(a) * p.dt, 0.0, p.v_max());
  if (std::isfinite(s.d_phi)) out.d_phi = std::max(0.0, s.d_phi - travelled);
  if (std::isfinite(s.d_v)) out.d_v = std::max(0.0, s.d_v - travelled);
  return out;
}

LightColor step_light(LightColor phi, const MdpParams& p,
                      std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  switch (phi) {
    case LightColor::Green:
      return unit(rng) < p.p1 ? LightColor::Yellow : LightColor::Green;
    case LightColor::Yellow:
      return unit(rng) < p.p2 ? LightColor::Red : LightColor::Yellow;
    case LightColor::Red:
      return unit(rng) < p.p3 ? LightColor::Green : LightColor::Red;
    case LightColor::None:
      return LightColor::None;
  }
  return LightColor::None;
}

MdpState mdp_step(const MdpState& s, MdpAction a, const MdpParams& p,
                  std::mt19937_64& rng) {
  MdpState out = step_kinematics(s, a, p);
  out.phi = step_light(s.phi, p, rng);
  return out;
}

double reference_speed(const MdpState& s, const MdpParams& p) {
  if (s.d_v < p.stop_dist_veh) return 0.0;
  if (s.phi == LightColor::Red && s.d_phi < p.stop_dist_tl) return 0.0;
  return p.v_limit - p.v_ref_margin;
}

double reward(const MdpState& s, const MdpParams& p) {
  const double dv = s.v - reference_speed(s, p);
  return -dv * dv;
}

}  // namespace navsim::decision
