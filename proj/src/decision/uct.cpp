#include "navsim/decision/uct.hpp"

#include "navsim/common/rng.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace navsim::decision {
namespace {

constexpr std::uint32_t kNull = 0xFFFFFFFFu;
constexpr double kInf = std::numeric_limits<double>::infinity();

double light_move_prob(LightColor c, const MdpParams& p) {
  switch (c) {
    case LightColor::Green:
      return p.p1;
    case LightColor::Yellow:
      return p.p2;
    case LightColor::Red:
      return p.p3;
    case LightColor::None:
      return 0.0;
  }
  return 0.0;
}

LightColor light_moved(LightColor c) {
  switch (c) {
    case LightColor::Green:
      return LightColor::Yellow;
    case LightColor::Yellow:
      return LightColor::Red;
    case LightColor::Red:
      return LightColor::Green;
    case LightColor::None:
      return LightColor::None;
  }
  return LightColor::None;
}

// Only the light is stochastic, so each action edge fans out to at most
// two children: the light holds its color or advances. Values are kept
// consistent with Bellman backups over the expanded tree, which avoids
// the slow drift of running-mean backups; visit counts only steer UCB.
struct Node {
  double state_reward = 0.0;
  double move_prob = 0.0;     // light advance probability at this state
  double value = 0.0;         // estimate of the truncated V(state)
  std::array<int, kNumActions> visits{};
  std::array<double, kNumActions> q{};  // E[V(child)] per action
  std::array<std::array<std::uint32_t, 2>, kNumActions> child;  // stay, move
  Node() {
    for (auto& row : child) row.fill(kNull);
  }
};

class Search {
 public:
  Search(const MdpParams& params, const UctParams& uct)
      : params_(params), uct_(uct) {
    arena_.reserve(1024);
  }

  MdpAction run(const MdpState& root_state, int budget, std::uint64_t seed) {
    make_node(root_state);
    for (int i = 0; i < budget; ++i) {
      std::mt19937_64 rng(splitmix64(seed + static_cast<std::uint64_t>(i)));
      simulate(0, root_state, 0, rng);
    }
    const Node& root = arena_[0];
    std::size_t best = 0;
    double best_q = -kInf;
    for (std::size_t a = 0; a < kNumActions; ++a) {
      if (root.visits[a] == 0) continue;
      if (root.q[a] > best_q) {
        best_q = root.q[a];
        best = a;
      }
    }
    return static_cast<MdpAction>(best);
  }

 private:
  std::uint32_t make_node(const MdpState& s) {
    const std::uint32_t id = static_cast<std::uint32_t>(arena_.size());
    arena_.emplace_back();
    Node& n = arena_.back();
    n.state_reward = reward(s, params_);
    n.move_prob = light_move_prob(s.phi, params_);
    n.value = n.state_reward;  // refined by rollout or backup
    return id;
  }

  // One simulation pass: UCB descent, expansion with a rollout leaf
  // estimate, then Bellman recomputation bottom-up along the path.
  void simulate(std::uint32_t node_index, const MdpState& s, int depth,
                std::mt19937_64& rng) {
    if (depth == uct_.max_depth) return;  // value already exact here

    const std::size_t a = select(arena_[node_index]);
    const MdpState next =
        mdp_step(s, static_cast<MdpAction>(a), params_, rng);
    const std::size_t slot = next.phi == light_moved(s.phi) && s.phi != next.phi
                                 ? 1
                                 : 0;

    std::uint32_t child = arena_[node_index].child[a][slot];
    if (child == kNull) {
      child = make_node(next);
      arena_[node_index].child[a][slot] = child;
      if (depth + 1 < uct_.max_depth)
        arena_[child].value = rollout(next, depth + 1, rng);
    } else {
      simulate(child, next, depth + 1, rng);
    }

    Node& node = arena_[node_index];
    node.visits[a] += 1;
    node.q[a] = action_value(node, a);
    double best = -kInf;
    for (std::size_t k = 0; k < kNumActions; ++k)
      if (node.visits[k] > 0) best = std::max(best, node.q[k]);
    node.value = node.state_reward + params_.gamma * best;
  }

  // Exact-probability mix over the expanded outcomes of one action.
  double action_value(const Node& node, std::size_t a) const {
    const std::uint32_t stay = node.child[a][0];
    const std::uint32_t move = node.child[a][1];
    const double pm = node.move_prob;
    double num = 0.0;
    double den = 0.0;
    if (stay != kNull) {
      num += (1.0 - pm) * arena_[stay].value;
      den += 1.0 - pm;
    }
    if (move != kNull) {
      num += pm * arena_[move].value;
      den += pm;
    }
    return den > 0.0 ? num / den : -kInf;
  }

  std::size_t select(const Node& node) const {
    int total = 0;
    for (std::size_t a = 0; a < kNumActions; ++a) {
      if (node.visits[a] == 0) return a;
      total += node.visits[a];
    }
    std::size_t best = 0;
    double best_score = -kInf;
    for (std::size_t a = 0; a < kNumActions; ++a) {
      const double bonus =
          uct_.exploration * std::sqrt(std::log(total) / node.visits[a]);
      if (node.q[a] + bonus > best_score) {
        best_score = node.q[a] + bonus;
        best = a;
      }
    }
    return best;
  }

  // Default policy: the light and both distances evolve independently of
  // the action, so the greedy step just picks the speed closest to the
  // next reference speed.
  double rollout(MdpState s, int depth, std::mt19937_64& rng) const {
    double total = reward(s, params_);
    double disc = 1.0;
    for (int d = depth; d < uct_.max_depth; ++d) {
      const LightColor phi2 = step_light(s.phi, params_, rng);
      double best_r = -kInf;
      MdpState best_next;
      for (std::size_t a = 0; a < kNumActions; ++a) {
        MdpState cand = step_kinematics(s, static_cast<MdpAction>(a), params_);
        cand.phi = phi2;
        const double r = reward(cand, params_);
        if (r > best_r) {
          best_r = r;
          best_next = cand;
        }
      }
      s = best_next;
      disc *= params_.gamma;
      total += disc * best_r;
    }
    return total;
  }

  const MdpParams& params_;
  const UctParams& uct_;
  std::vector<Node> arena_;
};

}  // namespace

MdpAction plan_action(const MdpState& s, const MdpParams& params, int budget,
                      std::uint64_t seed, const UctParams& uct) {
  if (budget < 1) throw std::invalid_argument("plan_action needs budget >= 1");
  if (uct.max_depth < 1) throw std::invalid_argument("max_depth must be >= 1");
  Search search(params, uct);
  return search.run(s, budget, seed);
}

}  // namespace navsim::decision
