#include "navsim/perception/box_fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace navsim::perception {
namespace {

constexpr double kMinExtent = 0.1;

// Monotone-chain convex hull, counterclockwise, no duplicate endpoint.
std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Vec2& a, const Vec2& b) {
                          return a.x == b.x && a.y == b.y;
                        }),
            pts.end());
  const size_t n = pts.size();
  if (n <= 2) return pts;

  std::vector<Vec2> hull(2 * n);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {
    while (k >= 2 &&
           (hull[k - 1] - hull[k - 2]).cross(pts[i] - hull[k - 2]) <= 0.0)
      --k;
    hull[k++] = pts[i];
  }
  const size_t lower = k + 1;
  for (size_t i = n - 1; i-- > 0;) {
    while (k >= lower &&
           (hull[k - 1] - hull[k - 2]).cross(pts[i] - hull[k - 2]) <= 0.0)
      --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

double normalize_box_yaw(double yaw) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  while (yaw > half_pi) yaw -= std::numbers::pi;
  while (yaw <= -half_pi) yaw += std::numbers::pi;
  return yaw;
}

ObstacleBox from_axis(const Vec2& u, double min_u, double max_u,
                      const Vec2& v, double min_v, double max_v) {
  const double mid_u = (min_u + max_u) / 2.0;
  const double mid_v = (min_v + max_v) / 2.0;
  const double eu = max_u - min_u;
  const double ev = max_v - min_v;

  ObstacleBox box;
  box.cx = u.x * mid_u + v.x * mid_v;
  box.cy = u.y * mid_u + v.y * mid_v;
  if (eu >= ev) {
    box.length = eu;
    box.width = ev;
    box.yaw = std::atan2(u.y, u.x);
  } else {
    box.length = ev;
    box.width = eu;
    box.yaw = std::atan2(v.y, v.x);
  }
  box.yaw = normalize_box_yaw(box.yaw);
  box.length = std::max(box.length, kMinExtent);
  box.width = std::max(box.width, kMinExtent);
  return box;
}

}  // namespace

ObstacleBox fit_box(const PointCloud& cloud, std::span<const size_t> indices) {
  if (indices.empty()) throw std::invalid_argument("empty cluster");

  std::vector<Vec2> pts;
  pts.reserve(indices.size());
  float zmin = std::numeric_limits<float>::infinity();
  float zmax = -std::numeric_limits<float>::infinity();
  for (const size_t i : indices) {
    const Point3& p = cloud.points.at(i);
    pts.push_back({p.x, p.y});
    zmin = std::min(zmin, p.z);
    zmax = std::max(zmax, p.z);
  }

  const std::vector<Vec2> hull = convex_hull(std::move(pts));
  ObstacleBox box;
  if (hull.size() == 1) {
    box.cx = hull[0].x;
    box.cy = hull[0].y;
    box.length = box.width = kMinExtent;
    box.yaw = 0.0;
  } else if (hull.size() == 2) {
    const Vec2 d = hull[1] - hull[0];
    const double len = d.norm();
    const Vec2 u{d.x / len, d.y / len};
    const Vec2 v{-u.y, u.x};
    box = from_axis(u, hull[0].dot(u), hull[0].dot(u) + len, v,
                    hull[0].dot(v), hull[0].dot(v));
  } else {
    double best_area = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < hull.size(); ++i) {
      const Vec2 e = hull[(i + 1) % hull.size()] - hull[i];
      const double elen = e.norm();
      if (elen < 1e-12) continue;
      const Vec2 u{e.x / elen, e.y / elen};
      const Vec2 v{-u.y, u.x};
      double min_u = std::numeric_limits<double>::infinity(), max_u = -min_u;
      double min_v = min_u, max_v = -min_u;
      for (const Vec2& p : hull) {
        min_u = std::min(min_u, p.dot(u));
        max_u = std::max(max_u, p.dot(u));
        min_v = std::min(min_v, p.dot(v));
        max_v = std::max(max_v, p.dot(v));
      }
      const double area = (max_u - min_u) * (max_v - min_v);
      if (area < best_area) {
        best_area = area;
        box = from_axis(u, min_u, max_u, v, min_v, max_v);
      }
    }
  }
  box.height = (zmax > zmin) ? zmax - zmin : 0.0;
  return box;
}

ObstacleBox fit_box(const PointCloud& cloud) {
  std::vector<size_t> idx(cloud.points.size());
  std::iota(idx.begin(), idx.end(), size_t{0});
  return fit_box(cloud, idx);
}

}  // namespace navsim::perception
