#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "navsim/decision/mdp.hpp"

namespace navsim::decision {

// Discretization for the exact solver. Distances get a dedicated
// "no target" bin on top of the uniform range. With the default steps
// the grid is closed under the dynamics: speeds move in 2 m/s and
// 4 m/s increments so grid speeds stay multiples of 0.5, and distances
// then shrink by multiples of 0.5 m per step, which keeps snapping
// exact everywhere except at the 1.2x speed cap.
struct DecisionGrid {
  double v_step = 0.5;
  double d_step = 0.5;
  double d_max = 100.0;
};

// Exact tabular solution of the decision MDP on a finite grid. States
// off the grid snap to the nearest cell (distances beyond d_max and
// infinities share the no-target bin, which the dynamics never leave).
class ValueIterationOracle {
 public:
  ValueIterationOracle(const MdpParams& params, const DecisionGrid& grid = {});

  // Greedy action: argmax over actions of E[V(next)], ties resolved in
  // declaration order (Brake first).
  MdpAction policy(const MdpState& s) const;

  // Converged value at the snapped state.
  double value(const MdpState& s) const;

  // E[V(next)] per action, indexed by MdpAction.
  std::array<double, kNumActions> action_values(const MdpState& s) const;

  MdpState snap(const MdpState& s) const;
  int sweeps() const { return sweeps_; }
  std::size_t state_count() const { return values_.size(); }
  MdpState grid_state(std::size_t index) const;

 private:
  std::size_t snap_index(const MdpState& s) const;
  std::size_t flat(std::size_t iv, std::size_t idphi, std::size_t iphi,
                   std::size_t idv) const;

  MdpParams params_;
  DecisionGrid grid_;
  std::vector<double> v_values_;
  std::vector<double> d_values_;  // last entry stands for "no target"
  std::size_t nv_ = 0;
  std::size_t nd_ = 0;

  // Per (state, action): two possible successors (light self-loop and
  // light advance) with the advance probability.
  std::vector<std::uint32_t> next_stay_;
  std::vector<std::uint32_t> next_move_;
  std::vector<double> move_prob_;
  std::vector<double> values_;
  int sweeps_ = 0;
};

}  // namespace navsim::decision
