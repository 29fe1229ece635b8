#pragma once

namespace navsim::control {

struct BicycleState {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
  double kappa = 0.0;  // 1/m
};

// Explicit Euler step of the kinematic bicycle in curvature form. All
// derivatives use the pre-step state; curvature integrates the steering
// rate input tau and is clamped to the mechanical limit.
BicycleState bicycle_step(const BicycleState& s, double v, double tau,
                          double dt, double kappa_max = 0.22);

}  // namespace navsim::control
