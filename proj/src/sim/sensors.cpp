#include "navsim/sim/sensors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "navsim/common/angles.hpp"
#include "navsim/common/rng.hpp"

namespace navsim::sim {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Ray {
  double ox, oy, oz;
  double dx, dy, dz;  // any parametrization; hits return its t
};

/// Upright box: oriented footprint extruded from the ground to `height`.
struct Box3 {
  Pose2D pose;
  double half_len, half_wid, height;
};

double ray_ground(const Ray& r) {
  if (r.dz >= -1e-12) return kInf;
  const double t = -r.oz / r.dz;
  return t > 1e-9 ? t : kInf;
}

/// Slab test in the box frame. Entry distance, or infinity on a miss or
/// when the origin already sits inside.
double ray_box(const Ray& r, const Box3& b) {
  const double c = std::cos(b.pose.theta), s = std::sin(b.pose.theta);
  const double rx = r.ox - b.pose.x, ry = r.oy - b.pose.y;
  const double ox = c * rx + s * ry;
  const double oy = -s * rx + c * ry;
  const double dx = c * r.dx + s * r.dy;
  const double dy = -s * r.dx + c * r.dy;

  double t0 = 0.0, t1 = kInf;
  const double lo[3] = {-b.half_len, -b.half_wid, 0.0};
  const double hi[3] = {b.half_len, b.half_wid, b.height};
  const double o[3] = {ox, oy, r.oz};
  const double d[3] = {dx, dy, r.dz};
  for (int i = 0; i < 3; ++i) {
    if (std::abs(d[i]) < 1e-12) {
      if (o[i] < lo[i] || o[i] > hi[i]) return kInf;
      continue;
    }
    double a = (lo[i] - o[i]) / d[i];
    double z = (hi[i] - o[i]) / d[i];
    if (a > z) std::swap(a, z);
    t0 = std::max(t0, a);
    t1 = std::min(t1, z);
    if (t0 > t1) return kInf;
  }
  return t0 > 1e-9 ? t0 : kInf;
}

std::vector<Box3> world_boxes(const SimWorld& w) {
  std::vector<Box3> out;
  out.reserve(w.actors.size());
  for (size_t i = 0; i < w.actors.size(); ++i) {
    const ActorState& st = w.actors[i];
    if (!st.active) continue;
    const ActorSpec& spec = w.scenario->actors[i];
    out.push_back({st.pose, spec.length / 2.0, spec.width / 2.0, spec.height});
  }
  return out;
}

double nearest_hit(const Ray& r, const std::vector<Box3>& boxes) {
  double best = ray_ground(r);
  for (const Box3& b : boxes) best = std::min(best, ray_box(r, b));
  return best;
}

}  // namespace

SensorRig::SensorRig(std::shared_ptr<const ScenarioConfig> sc) : sc_(std::move(sc)) {
  if (!sc_) throw std::invalid_argument("null scenario");
  const UtmCoord origin = geo_to_utm(sc_->geo_anchor);
  anchor_.zone = origin.zone;
  anchor_.south = origin.south;
  anchor_.easting0 = origin.easting;
  anchor_.northing0 = origin.northing;
  noise_scale_ = weather_noise_scale(sc_->weather);
  gps_seed_ = splitmix64(sc_->seed ^ 0x6770735fULL);
  camera_seed_ = splitmix64(sc_->seed ^ 0x63616d5fULL);
}

GpsFix SensorRig::sense_gps(const SimWorld& w, std::uint64_t frame) const {
  std::mt19937_64 rng(splitmix64(gps_seed_ + frame));
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double sigma = sc_->sensors.gps.sigma_m * noise_scale_;
  const auto fix = [&](const Vec2& offset) {
    const Vec2 p = w.ego.pose.transform(offset);
    UtmCoord c;
    c.zone = anchor_.zone;
    c.south = anchor_.south;
    c.easting = p.x + anchor_.easting0 + sigma * gauss(rng);
    c.northing = p.y + anchor_.northing0 + sigma * gauss(rng);
    return utm_to_geo(c);
  };
  GpsFix out;
  out.time = w.time;
  out.back = fix(sc_->sensors.gps.back_offset);
  out.front = fix(sc_->sensors.gps.front_offset);
  return out;
}

PointCloud SensorRig::sense_lidar(const SimWorld& w) const {
  const LidarSpec& spec = sc_->sensors.lidar;
  const std::vector<Box3> boxes = world_boxes(w);
  const int channels = spec.channels;
  const int per_frame =
      std::max(1, static_cast<int>(std::lround(spec.points_per_second / spec.rate_hz)));
  const int azimuths = std::max(1, per_frame / channels);
  const double upper = deg_to_rad(spec.upper_fov_deg);
  const double lower = deg_to_rad(spec.lower_fov_deg);

  PointCloud cloud;
  cloud.points.reserve(static_cast<size_t>(channels) * azimuths);
  Ray ray;
  ray.ox = w.ego.pose.x;
  ray.oy = w.ego.pose.y;
  ray.oz = spec.height_m;
  for (int ch = 0; ch < channels; ++ch) {
    const double elev =
        channels == 1 ? upper : upper + (lower - upper) * ch / (channels - 1);
    const double ce = std::cos(elev), se = std::sin(elev);
    for (int j = 0; j < azimuths; ++j) {
      const double az = w.ego.pose.theta + 2.0 * std::numbers::pi * j / azimuths;
      ray.dx = ce * std::cos(az);
      ray.dy = ce * std::sin(az);
      ray.dz = se;
      const double t = nearest_hit(ray, boxes);
      if (t > spec.max_range_m) continue;
      const Vec2 world{ray.ox + ray.dx * t, ray.oy + ray.dy * t};
      const Vec2 local = w.ego.pose.inverse_transform(world);
      cloud.points.push_back({static_cast<float>(local.x),
                              static_cast<float>(local.y),
                              static_cast<float>(ray.oz + ray.dz * t)});
    }
  }
  return cloud;
}

perception::DepthImage SensorRig::sense_depth(const SimWorld& w,
                                              std::uint64_t frame) const {
  const CameraSpec& spec = sc_->sensors.camera;
  perception::CameraIntrinsics intr;
  intr.rows = spec.rows;
  intr.cols = spec.cols;
  intr.hfov = deg_to_rad(spec.hfov_deg);
  intr.vfov = 2.0 * std::atan(std::tan(intr.hfov / 2.0) * spec.rows / spec.cols);

  perception::DepthImage img;
  img.intr = intr;
  img.camera_pose = {0.0, 0.0, 0.0};  // mounted at the vehicle center
  img.camera_height = spec.height_m;
  img.depth.assign(static_cast<size_t>(spec.rows) * spec.cols, 0.0f);

  const std::vector<Box3> boxes = world_boxes(w);
  const double theta = w.ego.pose.theta;
  const double c = std::cos(theta), s = std::sin(theta);
  std::mt19937_64 rng(splitmix64(camera_seed_ + frame));
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double rel = spec.noise_rel * noise_scale_;

  Ray ray;
  ray.ox = w.ego.pose.x;
  ray.oy = w.ego.pose.y;
  ray.oz = spec.height_m;
  for (int r = 0; r < spec.rows; ++r) {
    for (int col = 0; col < spec.cols; ++col) {
      double left, up;
      perception::pixel_ray(intr, r, col, left, up);
      // Forward component 1, so the hit parameter is the z-depth.
      ray.dx = c - s * left;
      ray.dy = s + c * left;
      ray.dz = up;
      double t = nearest_hit(ray, boxes);
      if (!std::isfinite(t)) continue;
      if (rel > 0.0) t = std::max(1e-3, t * (1.0 + rel * gauss(rng)));
      img.at(r, col) = static_cast<float>(t);
    }
  }
  return img;
}

GroundTruthObjects SensorRig::sense_objects(const SimWorld& w, double range_m,
                                            double fov_rad) const {
  GroundTruthObjects out;
  out.time = w.time;
  const Vec2 ego = w.ego.pose.position();
  const auto visible = [&](const Vec2& p) {
    const Vec2 d = p - ego;
    const double dist = d.norm();
    if (dist > range_m) return false;
    if (dist < 1e-9) return true;
    const double bearing = normalize_angle(std::atan2(d.y, d.x) - w.ego.pose.theta);
    return std::abs(bearing) <= fov_rad / 2.0 + 1e-12;
  };
  for (size_t i = 0; i < w.actors.size(); ++i) {
    const ActorState& st = w.actors[i];
    if (!st.active || !visible(st.pose.position())) continue;
    const ActorSpec& spec = w.scenario->actors[i];
    out.objects.push_back({spec.type, st.pose, st.velocity, spec.length,
                           spec.width, spec.height, static_cast<int>(i)});
  }
  for (size_t i = 0; i < w.lights.size(); ++i) {
    const LightSpec& l = w.scenario->lights[i];
    if (!visible(l.position)) continue;
    out.lights.push_back({l.position, l.stop_line, w.lights[i],
                          static_cast<int>(i)});
  }
  return out;
}

}  // namespace navsim::sim
