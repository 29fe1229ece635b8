#pragma once

#include <vector>

#include "navsim/perception/box_fit.hpp"
#include "navsim/perception/clustering.hpp"
#include "navsim/perception/height_grid.hpp"

namespace navsim::perception {

struct DetectorConfig {
  GridSpec grid;
  double cluster_eps = 0.5;
  int cluster_min_pts = 4;
};

/// Full obstacle pipeline over a vehicle-frame cloud: height-grid ground
/// suppression, density clustering of the occupied cells, then an oriented
/// box per cluster. Boxes carry no velocity.
std::vector<ObstacleBox> detect_obstacles(const PointCloud& cloud,
                                          const DetectorConfig& cfg = {});

}  // namespace navsim::perception
