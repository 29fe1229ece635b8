#pragma once

#include <cmath>
#include <numbers>

namespace navsim {

/// Wraps an angle in radians into (-pi, pi].
inline double normalize_angle(double a) {
  constexpr double pi = std::numbers::pi;
  double r = std::fmod(a + pi, 2.0 * pi);
  if (r <= 0.0) r += 2.0 * pi;
  return r - pi;
}

/// Smallest signed difference a - b, wrapped into (-pi, pi].
inline double angle_diff(double a, double b) {
  return normalize_angle(a - b);
}

inline double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

}  // namespace navsim
