#pragma once

#include <vector>

#include "navsim/common/types.hpp"
#include "navsim/control/bicycle.hpp"
#include "navsim/planner/path.hpp"

namespace navsim::control {

struct MpcParams {
  double dt = 1.0;       // s per horizon step
  double horizon = 4.0;  // s
  double cx = 5.0;
  double cy = 5.0;
  double ctheta = 10.0;
  double ckappa = 100.0;
  double ctau = 10.0;
  double kappa_max = 0.22;  // 1/m, ~= tan(0.55)/2.85
  double tau_max = 0.5;     // 1/(m*s)
  // Model integration step inside the solver. One Euler step per
  // horizon interval (8+ m at road speed) bends outward by over a
  // meter on a radius-20 curve, which the optimizer then "corrects"
  // into a real inward offset. Sub-stepping keeps the prediction
  // within millimeters of the continuous model.
  double integration_dt = 0.05;  // s

  int steps() const;
  int substeps() const;  // model steps per horizon interval
};

struct MpcSolution {
  std::vector<double> tau;              // steering-rate plan, one per step
  std::vector<BicycleState> predicted;  // state after each step
  double cost = 0.0;
};

// Tracking cost against reference samples time-aligned to the horizon
// (sample i sits at arc length s0 + v*(i+1)*dt). Quadratic in every
// residual; the heading residual is angle-normalized.
double mpc_cost(const std::vector<BicycleState>& states,
                const std::vector<planner::PathSample>& reference,
                const std::vector<double>& tau, const MpcParams& params);

// Receding-horizon solve for the steering-rate sequence. Velocity is
// held constant over the horizon. `warm_start` is the previous
// solution's sequence; it is shifted one step before use. The result
// never costs more than the zero sequence or the shifted warm start.
// Throws if the path ends before the horizon does or the cost turns
// non-finite.
MpcSolution mpc_solve(const VehicleState& ego, const planner::DensePath& path, double v,
                      const MpcParams& params,
                      const std::vector<double>* warm_start = nullptr);

// Front-wheel angle after following the plan's first steering rate for
// `dt` seconds (one horizon step when dt <= 0):
//   phi' = phi + tau0 * wheelbase * cos^2(phi) * dt, clamped to the limit.
// A receding-horizon loop that re-solves every control period must pass
// its own period; integrating the full horizon step here over-steers.
double steering_from_solution(const MpcSolution& sol, const VehicleState& ego,
                              const MpcParams& params, double max_steer = 0.55,
                              double dt = 0.0);

}  // namespace navsim::control
