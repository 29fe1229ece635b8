#pragma once

#include <Eigen/Dense>
#include <optional>

#include "navsim/common/geo.hpp"
#include "navsim/common/types.hpp"

namespace navsim::localization {

/// Full pose observation in the world frame.
struct Observation {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
};

/// Odometry over one filter step, from the vehicle bus.
struct ControlInput {
  double v = 0.0;      // longitudinal speed, m/s
  double kappa = 0.0;  // path curvature, 1/m
  double dt = 0.0;     // elapsed time, seconds
};

struct EkfState {
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();  // x, y, theta
  Eigen::Matrix3d cov = Eigen::Matrix3d::Identity();

  Pose2D pose() const { return {mean(0), mean(1), mean(2)}; }
};

struct EkfConfig {
  /// Process noise accumulated per second of prediction.
  Eigen::Matrix3d process_noise_rate =
      Eigen::Vector3d(0.01, 0.01, 1e-4).asDiagonal();
  /// Observation noise for (x, y, theta).
  Eigen::Matrix3d measurement_noise =
      Eigen::Vector3d(0.25, 0.25, 0.0025).asDiagonal();
  /// Squared-Mahalanobis gate for a 3-dof observation (99.7% quantile).
  double gate = 13.8;
};

/// Heading of the baseline from back to front, radians.
/// Throws std::invalid_argument when the baseline is shorter than 1e-6 m.
double heading_from_pair(const Vec2& back, const Vec2& front);

/// Curvature unicycle prediction: heading integrates first, position uses
/// the updated heading. Covariance grows by the linearized propagation plus
/// process noise scaled by dt.
EkfState ekf_predict(const EkfState& s, const ControlInput& u,
                     const EkfConfig& cfg);

struct UpdateOutcome {
  EkfState state;
  bool rejected = false;
  double mahalanobis2 = 0.0;
};

/// Gated EKF correction with an angle-aware innovation and Joseph-form
/// covariance update. A rejected observation leaves the state untouched.
UpdateOutcome ekf_update(const EkfState& s, const Observation& z,
                         const EkfConfig& cfg);

/// Local plane the world frame is pinned to: world (x, y) equals UTM
/// (easting - easting0, northing - northing0) in the given zone.
struct GeoAnchor {
  int zone = 33;
  bool south = false;
  double easting0 = 0.0;
  double northing0 = 0.0;
};

/// GPS + odometry pose filter. Converts receiver fixes to the world plane,
/// derives heading from the receiver pair (or sequential fixes when only
/// one receiver is live) and runs the gated EKF over them.
class GpsEkf {
 public:
  explicit GpsEkf(const EkfConfig& cfg = {}, const GeoAnchor& anchor = {});

  /// One filter step: predict over can.dt, then correct with the fix if a
  /// heading source is available. Returns the current estimate, or nullopt
  /// while the filter has not seen enough data to initialize.
  std::optional<EkfState> localize(const GeoPoint& gps_back,
                                   const std::optional<GeoPoint>& gps_front,
                                   const ControlInput& can);

  /// Prediction-only step for ticks without a GPS fix.
  std::optional<EkfState> predict_only(const ControlInput& can);

  const std::optional<EkfState>& state() const { return state_; }
  bool last_rejected() const { return last_rejected_; }

 private:
  Vec2 to_world(const GeoPoint& p) const;

  EkfConfig cfg_;
  GeoAnchor anchor_;
  std::optional<EkfState> state_;
  std::optional<Vec2> prev_back_;
  bool last_rejected_ = false;
};

}  // namespace navsim::localization
