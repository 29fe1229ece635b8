#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "navsim/common/angles.hpp"

namespace navsim {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double cross(const Vec2& o) const { return x * o.y - y * o.x; }
  double norm() const { return std::hypot(x, y); }
};

inline double distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

/// Planar pose. theta is kept in (-pi, pi] by every operation that writes it.
struct Pose2D {
  double x = 0.0;      // position east, meters
  double y = 0.0;      // position north, meters
  double theta = 0.0;  // heading from +x axis, radians

  Vec2 position() const { return {x, y}; }
  Vec2 heading() const { return {std::cos(theta), std::sin(theta)}; }

  /// Maps a point from this pose's local frame into the world frame.
  Vec2 transform(const Vec2& local) const {
    const double c = std::cos(theta), s = std::sin(theta);
    return {x + c * local.x - s * local.y, y + s * local.x + c * local.y};
  }

  /// Maps a world point into this pose's local frame.
  Vec2 inverse_transform(const Vec2& world) const {
    const double c = std::cos(theta), s = std::sin(theta);
    const double dx = world.x - x, dy = world.y - y;
    return {c * dx + s * dy, -s * dx + c * dy};
  }
};

/// One point of a sensor point cloud, meters in the sensor or vehicle frame.
struct Point3 {
  float x = 0.0f;
  float y = 0.0f;
  float z = 0.0f;
};

/// Point cloud with optional per-point RGB color in [0, 1].
/// colors is either empty or the same length as points.
struct PointCloud {
  std::vector<Point3> points;
  std::vector<std::array<float, 3>> colors;

  size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
};

/// Ego vehicle state. kappa and steer satisfy kappa = tan(steer) / wheelbase
/// whenever both are set through set_steer.
struct VehicleState {
  Pose2D pose;
  double v = 0.0;          // longitudinal speed, m/s
  double kappa = 0.0;      // path curvature, 1/m
  double steer = 0.0;      // front wheel angle, radians
  double wheelbase = 2.85; // axle distance, meters

  void set_steer(double s) {
    steer = s;
    kappa = std::tan(s) / wheelbase;
  }
};

enum class LightColor { Green, Yellow, Red, None };

enum class TrackMode { Track1 = 1, Track2 = 2, Track3 = 3, Track4 = 4 };

}  // namespace navsim
