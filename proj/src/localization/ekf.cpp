#include "navsim/localization/ekf.hpp"

#include <cmath>
#include <stdexcept>

#include "navsim/common/angles.hpp"

namespace navsim::localization {

double heading_from_pair(const Vec2& back, const Vec2& front) {
  const double dx = front.x - back.x;
  const double dy = front.y - back.y;
  if (std::hypot(dx, dy) < 1e-6)
    throw std::invalid_argument("receiver baseline is degenerate");
  return std::atan2(dy, dx);
}

EkfState ekf_predict(const EkfState& s, const ControlInput& u,
                     const EkfConfig& cfg) {
  const double theta = normalize_angle(s.mean(2) + u.kappa * u.v * u.dt);

  EkfState out;
  out.mean(0) = s.mean(0) + u.v * std::cos(theta) * u.dt;
  out.mean(1) = s.mean(1) + u.v * std::sin(theta) * u.dt;
  out.mean(2) = theta;

  Eigen::Matrix3d F = Eigen::Matrix3d::Identity();
  F(0, 2) = -u.v * std::sin(theta) * u.dt;
  F(1, 2) = u.v * std::cos(theta) * u.dt;
  out.cov = F * s.cov * F.transpose() + cfg.process_noise_rate * u.dt;
  return out;
}

UpdateOutcome ekf_update(const EkfState& s, const Observation& z,
                         const EkfConfig& cfg) {
  Eigen::Vector3d innov;
  innov << z.x - s.mean(0), z.y - s.mean(1), angle_diff(z.theta, s.mean(2));

  // Tiny diagonal jitter keeps the solve healthy when both covariances are
  // driven to zero in noise-free setups.
  Eigen::Matrix3d S = s.cov + cfg.measurement_noise;
  S.diagonal().array() += 1e-12;

  const Eigen::Matrix3d S_inv = S.inverse();
  const double d2 = innov.transpose() * S_inv * innov;
  if (d2 > cfg.gate) return {s, true, d2};

  const Eigen::Matrix3d K = s.cov * S_inv;
  EkfState out;
  out.mean = s.mean + K * innov;
  out.mean(2) = normalize_angle(out.mean(2));

  const Eigen::Matrix3d IK = Eigen::Matrix3d::Identity() - K;
  out.cov = IK * s.cov * IK.transpose() +
            K * cfg.measurement_noise * K.transpose();
  return {out, false, d2};
}

GpsEkf::GpsEkf(const EkfConfig& cfg, const GeoAnchor& anchor)
    : cfg_(cfg), anchor_(anchor) {}

Vec2 GpsEkf::to_world(const GeoPoint& p) const {
  const UtmCoord c = geo_to_utm(p, anchor_.zone, anchor_.south);
  return {c.easting - anchor_.easting0, c.northing - anchor_.northing0};
}

std::optional<EkfState> GpsEkf::localize(
    const GeoPoint& gps_back, const std::optional<GeoPoint>& gps_front,
    const ControlInput& can) {
  const Vec2 back = to_world(gps_back);

  std::optional<double> heading;
  if (gps_front) {
    const Vec2 front = to_world(*gps_front);
    if (distance(back, front) > 1e-6)
      heading = heading_from_pair(back, front);
  }
  if (!heading && prev_back_ && distance(*prev_back_, back) > 1e-6)
    heading = heading_from_pair(*prev_back_, back);
  prev_back_ = back;

  last_rejected_ = false;
  if (!state_) {
    if (!heading) return std::nullopt;  // wait for a usable heading source
    EkfState seed;
    seed.mean << back.x, back.y, normalize_angle(*heading);
    seed.cov = cfg_.measurement_noise * 10.0;
    state_ = seed;
    return state_;
  }

  *state_ = ekf_predict(*state_, can, cfg_);
  if (heading) {
    const UpdateOutcome r =
        ekf_update(*state_, {back.x, back.y, *heading}, cfg_);
    last_rejected_ = r.rejected;
    *state_ = r.state;
  }
  return state_;
}

std::optional<EkfState> GpsEkf::predict_only(const ControlInput& can) {
  if (!state_) return std::nullopt;
  *state_ = ekf_predict(*state_, can, cfg_);
  return state_;
}

}  // namespace navsim::localization
