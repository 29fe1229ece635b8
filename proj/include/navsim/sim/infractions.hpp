#pragma once

#include <vector>

#include "navsim/sim/world.hpp"

namespace navsim::sim {

/// Rule checks over one step, `before` -> `after`. Returns the events
/// that newly fired and updates the episode flags inside `after`, so a
/// violation that persists across steps is reported exactly once per
/// continuous episode. Crossing-type rules (stop lines) compare the ego
/// center path between the two snapshots.
std::vector<InfractionEvent> detect_infractions(const SimWorld& before,
                                                SimWorld& after);

}  // namespace navsim::sim
