#include "navsim/control/bicycle.hpp"

#include <algorithm>
#include <cmath>

namespace navsim::control {

BicycleState bicycle_step(const BicycleState& s, double v, double tau,
                          double dt, double kappa_max) {
  BicycleState out;
  out.x = s.x + v * std::cos(s.theta) * dt;
  out.y = s.y + v * std::sin(s.theta) * dt;
  out.theta = s.theta + v * s.kappa * dt;
  out.kappa = std::clamp(s.kappa + tau * dt, -kappa_max, kappa_max);
  return out;
}

}  // namespace navsim::control
