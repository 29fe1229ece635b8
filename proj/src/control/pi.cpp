#include "navsim/control/pi.hpp"

#include <algorithm>
#include <stdexcept>

namespace navsim::control {

PiResult pi_speed_control(double v_target, double v, const PiParams& ctrl,
                          double integral, double dt) {
  if (dt <= 0.0) throw std::invalid_argument("pi control needs dt > 0");
  const double e = v_target - v;
  const double grown = std::clamp(integral + e * dt, -ctrl.integral_limit,
                                  ctrl.integral_limit);
  const double unsat = ctrl.kp * e + ctrl.ki * grown;
  PiResult out;
  const bool windup = (unsat > 1.0 && e > 0.0) || (unsat < -1.0 && e < 0.0);
  out.integral = windup ? integral : grown;
  out.command = std::clamp(ctrl.kp * e + ctrl.ki * out.integral, -1.0, 1.0);
  return out;
}

}  // namespace navsim::control
