#include "navsim/risk/obstacle_monitor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace navsim::risk {

ZoneConfig zones_for_speed(double v, const ZoneConfig& base) {
  ZoneConfig out = base;
  out.danger_end = std::max(base.danger_end, 1.5 * v);
  out.warning_end = std::max(base.warning_end, 4.0 * v);
  return out;
}

Zone classify_zone(double dtc, const ZoneConfig& cfg) {
  if (!(cfg.danger_end > 0.0) || !(cfg.warning_end > cfg.danger_end))
    throw std::invalid_argument("zone bounds must satisfy 0 < danger < warning");
  if (dtc <= cfg.danger_end) return Zone::Danger;
  if (dtc <= cfg.warning_end) return Zone::Warning;
  return Zone::Safe;
}

double box_edge_distance(const perception::ObstacleBox& box, const Vec2& p) {
  const double c = std::cos(box.yaw), s = std::sin(box.yaw);
  const double dx = p.x - box.cx, dy = p.y - box.cy;
  const double du = std::abs(c * dx + s * dy) - box.length / 2.0;
  const double dv = std::abs(-s * dx + c * dy) - box.width / 2.0;
  return std::hypot(std::max(du, 0.0), std::max(dv, 0.0));
}

std::vector<perception::ObstacleBox> predict_positions(
    const perception::ObstacleBox& box, double horizon, double dt) {
  if (horizon <= 0.0 || dt <= 0.0)
    throw std::invalid_argument("forecast needs positive horizon and dt");
  const int steps = static_cast<int>(std::floor(horizon / dt + 1e-9));
  const Vec2 vel = box.velocity.value_or(Vec2{0.0, 0.0});

  std::vector<perception::ObstacleBox> out;
  out.reserve(steps);
  for (int k = 1; k <= steps; ++k) {
    perception::ObstacleBox b = box;
    b.cx += vel.x * dt * k;
    b.cy += vel.y * dt * k;
    out.push_back(b);
  }
  return out;
}

std::vector<Conflict> detect_conflicts(
    const planner::DensePath& path, const Pose2D& ego,
    const std::vector<perception::ObstacleBox>& obstacles,
    const MonitorConfig& cfg) {
  // Validates the zone bounds up front.
  (void)classify_zone(0.0, cfg.zones);

  const planner::PathProjection proj =
      planner::project_to_path(ego.position(), path);
  const double s0 = proj.s;

  // First sample at or ahead of the ego projection.
  size_t start = 0;
  while (start < path.samples.size() && path.samples[start].s < s0) ++start;

  auto first_hit = [&](const perception::ObstacleBox& box)
      -> std::optional<double> {
    for (size_t k = start; k < path.samples.size(); ++k) {
      const Vec2 sp{path.samples[k].x, path.samples[k].y};
      if (box_edge_distance(box, sp) <= cfg.zones.proximity_threshold)
        return path.samples[k].s;
    }
    return std::nullopt;
  };

  std::vector<Conflict> out;
  for (size_t i = 0; i < obstacles.size(); ++i) {
    const perception::ObstacleBox& box = obstacles[i];

    double best_s = 0.0;
    bool found = false;
    std::optional<double> toc;

    if (const auto s_now = first_hit(box)) {
      best_s = *s_now;
      found = true;
      // A currently conflicting box needs no forecast to explain itself.
    } else if (box.velocity) {
      const auto forecast = predict_positions(box, cfg.horizon, cfg.dt);
      for (size_t k = 0; k < forecast.size(); ++k) {
        if (const auto s_hit = first_hit(forecast[k])) {
          if (!found || *s_hit < best_s) best_s = *s_hit;
          if (!toc) toc = cfg.dt * (k + 1);
          found = true;
        }
      }
    }

    if (!found) continue;
    Conflict c;
    c.obstacle = i;
    c.dtc = std::max(0.0, best_s - s0);
    c.zone = classify_zone(c.dtc, cfg.zones);
    c.time_of_conflict = toc;
    out.push_back(c);
  }

  std::sort(out.begin(), out.end(), [](const Conflict& a, const Conflict& b) {
    return a.dtc < b.dtc || (a.dtc == b.dtc && a.obstacle < b.obstacle);
  });
  return out;
}

}  // namespace navsim::risk
