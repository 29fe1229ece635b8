#pragma once

#include <cstddef>
#include <vector>

#include "navsim/common/types.hpp"

namespace navsim::perception {

/// Density clustering (DBSCAN) over the xy projection of the cloud.
///
/// A point is core when at least min_pts points (itself included) lie
/// within eps of it. Clusters are the connected components of core points
/// under the eps relation; a non-core point joins the cluster of its
/// nearest core neighbor or is dropped as noise. Resolving border points
/// by geometry rather than visit order makes the partition independent of
/// the input permutation.
///
/// Returns clusters as ascending index lists, ordered by smallest member.
/// Throws std::invalid_argument on eps <= 0 or min_pts < 1.
std::vector<std::vector<size_t>> cluster_obstacles(const PointCloud& cloud,
                                                   double eps = 0.5,
                                                   int min_pts = 4);

}  // namespace navsim::perception
