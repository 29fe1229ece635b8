#pragma once

namespace navsim::control {

struct PiParams {
  double kp = 0.5;
  double ki = 0.1;
  double integral_limit = 5.0;  // m/s * s
};

struct PiResult {
  double command = 0.0;   // [-1, 1]: negative brakes, positive throttles
  double integral = 0.0;  // carried error integral
};

// One PI update. The integral freezes while the output is saturated in
// the error's direction (conditional anti-windup) and is hard-clamped to
// the configured limit either way.
PiResult pi_speed_control(double v_target, double v, const PiParams& ctrl,
                          double integral, double dt);

}  // namespace navsim::control
