#pragma once

#include <cstdint>

#include "navsim/decision/mdp.hpp"

namespace navsim::decision {

struct UctParams {
  int max_depth = 10;          // decision steps per simulation
  double exploration = 160.0;  // UCB constant, in reward units
};

// Online tree search over the decision MDP. Runs `budget` simulations
// through a UCT tree using mdp_step as the generative model and returns
// the root action with the best mean return (discounted from the state
// after the root action). Deterministic for fixed (s, params, budget,
// seed): simulation i draws from its own generator seeded by the i-th
// splitmix64 output of `seed`. Ties prefer Brake, then StayConstant.
MdpAction plan_action(const MdpState& s, const MdpParams& params, int budget,
                      std::uint64_t seed, const UctParams& uct = {});

}  // namespace navsim::decision
