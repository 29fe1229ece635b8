#include "navsim/perception/detector.hpp"

namespace navsim::perception {

std::vector<ObstacleBox> detect_obstacles(const PointCloud& cloud,
                                          const DetectorConfig& cfg) {
  const HeightGrid grid = build_height_grid(cloud, cfg.grid);
  const PointCloud occupied = occupied_points(grid);
  const auto clusters =
      cluster_obstacles(occupied, cfg.cluster_eps, cfg.cluster_min_pts);

  std::vector<ObstacleBox> boxes;
  boxes.reserve(clusters.size());
  for (const auto& cluster : clusters)
    boxes.push_back(fit_box(occupied, cluster));
  return boxes;
}

}  // namespace navsim::perception
