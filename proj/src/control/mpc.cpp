#include "navsim/control/mpc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "navsim/common/angles.hpp"

namespace navsim::control {
namespace {

// Rolls the model out over the horizon and stacks weighted residuals:
// five per step (x, y, theta, kappa, tau).
struct Rollout {
  std::vector<BicycleState> states;
  Eigen::VectorXd residuals;
};

Rollout roll(const BicycleState& start, const std::vector<double>& tau,
             const std::vector<planner::PathSample>& reference, double v,
             const MpcParams& p) {
  const int h = p.steps();
  Rollout out;
  out.states.reserve(static_cast<size_t>(h));
  out.residuals.resize(5 * h);
  const double wx = std::sqrt(p.cx / 2.0);
  const double wy = std::sqrt(p.cy / 2.0);
  const double wt = std::sqrt(p.ctheta / 2.0);
  const double wk = std::sqrt(p.ckappa / 2.0);
  const double wu = std::sqrt(p.ctau / 2.0);
  const int sub = p.substeps();
  const double sub_dt = p.dt / sub;
  BicycleState s = start;
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < sub; ++j)
      s = bicycle_step(s, v, tau[static_cast<size_t>(i)], sub_dt, p.kappa_max);
    out.states.push_back(s);
    const planner::PathSample& ref = reference[static_cast<size_t>(i)];
    out.residuals(5 * i + 0) = wx * (s.x - ref.x);
    out.residuals(5 * i + 1) = wy * (s.y - ref.y);
    out.residuals(5 * i + 2) = wt * normalize_angle(s.theta - ref.theta_ref);
    out.residuals(5 * i + 3) = wk * (s.kappa - ref.kappa_ref);
    out.residuals(5 * i + 4) = wu * tau[static_cast<size_t>(i)];
  }
  return out;
}

}  // namespace

int MpcParams::steps() const {
  const double ratio = horizon / dt;
  const int n = static_cast<int>(std::lround(ratio));
  if (dt <= 0.0 || n < 1 || std::abs(ratio - n) > 1e-9)
    throw std::invalid_argument("horizon must be a positive multiple of dt");
  return n;
}

int MpcParams::substeps() const {
  if (integration_dt <= 0.0)
    throw std::invalid_argument("integration_dt must be positive");
  return std::max(1, static_cast<int>(std::ceil(dt / integration_dt - 1e-9)));
}

double mpc_cost(const std::vector<BicycleState>& states,
                const std::vector<planner::PathSample>& reference,
                const std::vector<double>& tau, const MpcParams& params) {
  const size_t h = static_cast<size_t>(params.steps());
  if (states.size() != h || reference.size() != h || tau.size() != h)
    throw std::invalid_argument("mpc_cost inputs must span the horizon");
  double total = 0.0;
  for (size_t i = 0; i < h; ++i) {
    const double ex = states[i].x - reference[i].x;
    const double ey = states[i].y - reference[i].y;
    const double et = normalize_angle(states[i].theta - reference[i].theta_ref);
    const double ek = states[i].kappa - reference[i].kappa_ref;
    total += params.cx / 2.0 * ex * ex + params.cy / 2.0 * ey * ey +
             params.ctheta / 2.0 * et * et + params.ckappa / 2.0 * ek * ek +
             params.ctau / 2.0 * tau[i] * tau[i];
  }
  return total;
}

MpcSolution mpc_solve(const VehicleState& ego, const planner::DensePath& path, double v,
                      const MpcParams& params,
                      const std::vector<double>* warm_start) {
  const int h = params.steps();
  const planner::PathProjection proj = planner::project_to_path(ego.pose.position(), path);
  if (proj.s + v * params.horizon > path.length() + 1e-9)
    throw std::runtime_error("reference path ends inside the MPC horizon");

  std::vector<planner::PathSample> reference;
  reference.reserve(static_cast<size_t>(h));
  for (int i = 1; i <= h; ++i)
    reference.push_back(planner::sample_at(path, proj.s + v * i * params.dt));

  const BicycleState start{ego.pose.x, ego.pose.y, ego.pose.theta, ego.kappa};
  const auto clamp_seq = [&](std::vector<double> seq) {
    seq.resize(static_cast<size_t>(h), 0.0);
    for (double& t : seq) t = std::clamp(t, -params.tau_max, params.tau_max);
    return seq;
  };
  const auto evaluate = [&](const std::vector<double>& seq) {
    Rollout r = roll(start, seq, reference, v, params);
    return std::pair<double, Rollout>(r.residuals.squaredNorm(), std::move(r));
  };

  const std::vector<double> zeros(static_cast<size_t>(h), 0.0);
  std::vector<double> best_seq = zeros;
  auto [best_cost, best_roll] = evaluate(zeros);
  if (!std::isfinite(best_cost))
    throw std::runtime_error("MPC cost is not finite");

  if (warm_start && !warm_start->empty()) {
    std::vector<double> shifted(warm_start->begin() + 1, warm_start->end());
    shifted = clamp_seq(std::move(shifted));
    auto [c, r] = evaluate(shifted);
    if (std::isfinite(c) && c < best_cost) {
      best_cost = c;
      best_seq = shifted;
      best_roll = std::move(r);
    }
  }

  // Levenberg-Marquardt on the stacked residuals with forward-difference
  // Jacobians; iterates are clamped to the steering-rate box.
  std::vector<double> seq = best_seq;
  double cost = best_cost;
  Eigen::VectorXd res = best_roll.residuals;
  double lambda = 1e-3;
  const double fd = 1e-6;
  for (int iter = 0; iter < 200; ++iter) {
    Eigen::MatrixXd jac(res.size(), h);
    for (int j = 0; j < h; ++j) {
      std::vector<double> bumped = seq;
      bumped[static_cast<size_t>(j)] += fd;
      jac.col(j) =
          (roll(start, bumped, reference, v, params).residuals - res) / fd;
    }
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd jtr = jac.transpose() * res;

    bool accepted = false;
    for (int damp = 0; damp < 25 && !accepted; ++damp) {
      Eigen::MatrixXd system = jtj;
      system.diagonal().array() += lambda;
      const Eigen::VectorXd delta = system.ldlt().solve(-jtr);
      std::vector<double> trial = seq;
      for (int j = 0; j < h; ++j)
        trial[static_cast<size_t>(j)] =
            std::clamp(trial[static_cast<size_t>(j)] + delta(j),
                       -params.tau_max, params.tau_max);
      auto [trial_cost, trial_roll] = evaluate(trial);
      if (std::isfinite(trial_cost) && trial_cost < cost) {
        const double improvement = cost - trial_cost;
        seq = std::move(trial);
        cost = trial_cost;
        res = trial_roll.residuals;
        lambda = std::max(lambda / 10.0, 1e-12);
        accepted = true;
        if (improvement < 1e-8) iter = 200;
      } else {
        lambda = std::min(lambda * 10.0, 1e12);
      }
    }
    if (!accepted) break;
  }

  if (cost < best_cost) {
    best_cost = cost;
    best_seq = seq;
  }

  MpcSolution sol;
  sol.tau = best_seq;
  sol.predicted = roll(start, best_seq, reference, v, params).states;
  sol.cost = best_cost;
  return sol;
}

double steering_from_solution(const MpcSolution& sol, const VehicleState& ego,
                              const MpcParams& params, double max_steer,
                              double dt) {
  if (sol.tau.empty())
    throw std::invalid_argument("empty steering-rate sequence");
  const double span = dt > 0.0 ? dt : params.dt;
  const double c = std::cos(ego.steer);
  const double phi =
      ego.steer + sol.tau.front() * ego.wheelbase * c * c * span;
  return std::clamp(phi, -max_steer, max_steer);
}

}  // namespace navsim::control
