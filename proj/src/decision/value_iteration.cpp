#include "navsim/decision/value_iteration.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace navsim::decision {
namespace {

constexpr std::array<LightColor, 4> kLights = {
    LightColor::Green, LightColor::Yellow, LightColor::Red, LightColor::None};

std::size_t light_index(LightColor c) {
  switch (c) {
    case LightColor::Green:
      return 0;
    case LightColor::Yellow:
      return 1;
    case LightColor::Red:
      return 2;
    case LightColor::None:
      return 3;
  }
  return 3;
}

// (advanced color, probability of advancing) for the light chain.
std::pair<LightColor, double> light_move(LightColor c, const MdpParams& p) {
  switch (c) {
    case LightColor::Green:
      return {LightColor::Yellow, p.p1};
    case LightColor::Yellow:
      return {LightColor::Red, p.p2};
    case LightColor::Red:
      return {LightColor::Green, p.p3};
    case LightColor::None:
      return {LightColor::None, 0.0};
  }
  return {LightColor::None, 0.0};
}

std::size_t nearest(const std::vector<double>& sorted, double x) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
  if (it == sorted.begin()) return 0;
  if (it == sorted.end()) return sorted.size() - 1;
  const std::size_t hi = static_cast<std::size_t>(it - sorted.begin());
  return (x - sorted[hi - 1] <= sorted[hi] - x) ? hi - 1 : hi;
}

// Deterministic chunked parallel-for over disjoint index ranges; the
// callback also receives its worker slot for race-free reductions.
template <typename Fn>
void parallel_over(std::size_t n, Fn&& fn) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers = std::min(hw, 8u);
  if (workers == 1 || n < 1u << 14) {
    fn(0u, std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&fn, w, lo, hi] { fn(w, lo, hi); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

ValueIterationOracle::ValueIterationOracle(const MdpParams& params,
                                           const DecisionGrid& grid)
    : params_(params), grid_(grid) {
  if (grid.v_step <= 0.0 || grid.d_step <= 0.0 || grid.d_max <= 0.0)
    throw std::invalid_argument("decision grid steps must be positive");
  if (params.gamma < 0.0 || params.gamma >= 1.0)
    throw std::invalid_argument("gamma must lie in [0, 1)");

  const double vmax = params_.v_max();
  for (double v = 0.0; v < vmax - 1e-9; v += grid.v_step)
    v_values_.push_back(v);
  v_values_.push_back(vmax);
  for (double d = 0.0; d < grid.d_max + 1e-9; d += grid.d_step)
    d_values_.push_back(std::min(d, grid.d_max));
  d_values_.push_back(kNoTarget);
  nv_ = v_values_.size();
  nd_ = d_values_.size();

  const std::size_t n = nv_ * nd_ * kLights.size() * nd_;
  next_stay_.resize(n * kNumActions);
  next_move_.resize(n * kNumActions);
  std::vector<double> rewards(n);
  values_.assign(n, 0.0);

  std::array<double, 4> move_prob;
  for (std::size_t c = 0; c < kLights.size(); ++c)
    move_prob[c] = light_move(kLights[c], params_).second;

  parallel_over(n, [&](unsigned, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const MdpState s = grid_state(i);
      rewards[i] = reward(s, params_);
      const LightColor moved = light_move(s.phi, params_).first;
      for (int a = 0; a < kNumActions; ++a) {
        MdpState next = step_kinematics(s, static_cast<MdpAction>(a), params_);
        const std::size_t base = i * kNumActions + static_cast<std::size_t>(a);
        next.phi = s.phi;
        next_stay_[base] = static_cast<std::uint32_t>(snap_index(next));
        next.phi = moved;
        next_move_[base] = static_cast<std::uint32_t>(snap_index(next));
      }
    }
  });

  // V(s) = R(s) + gamma * max_a E[V(s')], swept to a 1e-6 sup norm.
  // Jacobi sweeps so chunked updates stay order-independent.
  std::vector<double> fresh(n);
  const std::size_t phi_stride = nd_;  // flat layout: (...*4 + iphi)*nd + idv
  for (;;) {
    std::array<double, 9> chunk_delta{};
    parallel_over(n, [&](unsigned slot, std::size_t lo, std::size_t hi) {
      double local = 0.0;
      for (std::size_t i = lo; i < hi; ++i) {
        const double pm = move_prob[(i / phi_stride) % kLights.size()];
        double best = -std::numeric_limits<double>::infinity();
        for (int a = 0; a < kNumActions; ++a) {
          const std::size_t base =
              i * kNumActions + static_cast<std::size_t>(a);
          const double ev = (1.0 - pm) * values_[next_stay_[base]] +
                            pm * values_[next_move_[base]];
          best = std::max(best, ev);
        }
        fresh[i] = rewards[i] + params_.gamma * best;
        local = std::max(local, std::abs(fresh[i] - values_[i]));
      }
      chunk_delta[slot] = local;
    });
    values_.swap(fresh);
    ++sweeps_;
    double delta = 0.0;
    for (double d : chunk_delta) delta = std::max(delta, d);
    if (delta < 1e-6) break;
  }
}

std::size_t ValueIterationOracle::flat(std::size_t iv, std::size_t idphi,
                                       std::size_t iphi,
                                       std::size_t idv) const {
  return ((iv * nd_ + idphi) * kLights.size() + iphi) * nd_ + idv;
}

MdpState ValueIterationOracle::grid_state(std::size_t index) const {
  MdpState s;
  s.d_v = d_values_[index % nd_];
  index /= nd_;
  s.phi = kLights[index % kLights.size()];
  index /= kLights.size();
  s.d_phi = d_values_[index % nd_];
  index /= nd_;
  s.v = v_values_[index];
  return s;
}

std::size_t ValueIterationOracle::snap_index(const MdpState& s) const {
  const std::size_t iv = nearest(v_values_, std::clamp(s.v, 0.0, params_.v_max()));
  const auto snap_d = [&](double d) -> std::size_t {
    if (!std::isfinite(d)) return nd_ - 1;
    const double c = std::clamp(d, 0.0, grid_.d_max);
    return static_cast<std::size_t>(
        std::llround(c / grid_.d_step));
  };
  return flat(iv, snap_d(s.d_phi), light_index(s.phi), snap_d(s.d_v));
}

MdpState ValueIterationOracle::snap(const MdpState& s) const {
  return grid_state(snap_index(s));
}

double ValueIterationOracle::value(const MdpState& s) const {
  return values_[snap_index(s)];
}

std::array<double, kNumActions> ValueIterationOracle::action_values(
    const MdpState& s) const {
  const std::size_t i = snap_index(s);
  std::array<double, 4> move_prob;
  for (std::size_t c = 0; c < kLights.size(); ++c)
    move_prob[c] = light_move(kLights[c], params_).second;
  const double pm = move_prob[(i / nd_) % kLights.size()];
  std::array<double, kNumActions> out{};
  for (int a = 0; a < kNumActions; ++a) {
    const std::size_t base = i * kNumActions + static_cast<std::size_t>(a);
    out[static_cast<std::size_t>(a)] = (1.0 - pm) * values_[next_stay_[base]] +
                                       pm * values_[next_move_[base]];
  }
  return out;
}

MdpAction ValueIterationOracle::policy(const MdpState& s) const {
  const auto q = action_values(s);
  std::size_t best = 0;
  for (std::size_t a = 1; a < q.size(); ++a)
    if (q[a] > q[best]) best = a;
  return static_cast<MdpAction>(best);
}

}  // namespace navsim::decision
