#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "navsim/common/types.hpp"

namespace navsim::perception {

/// Footprint of the obstacle grid in the sensor frame. The default covers
/// 50 m x 50 m ahead of the vehicle at 10 cm resolution, laterally
/// centered.
struct GridSpec {
  int cells_x = 500;
  int cells_y = 500;
  double resolution = 0.10;        // cell edge, meters
  double origin_x = 0.0;           // world x of the low corner of cell (0, 0)
  double origin_y = -25.0;
  double height_threshold = 0.15;  // min z spread for an occupied cell
};

struct HeightCell {
  float min_z = 0.0f;
  float max_z = 0.0f;
  uint32_t count = 0;
};

/// Per-cell min/max height accumulator. A cell reads occupied exactly when
/// it holds at least two points spanning more than the height threshold,
/// which keeps flat ground and single stray returns out of the obstacle
/// set.
class HeightGrid {
 public:
  explicit HeightGrid(const GridSpec& spec);

  void add(const Point3& p);

  const GridSpec& spec() const { return spec_; }
  const HeightCell& cell(int ix, int iy) const {
    return cells_[static_cast<size_t>(iy) * spec_.cells_x + ix];
  }
  bool occupied(int ix, int iy) const {
    const HeightCell& c = cell(ix, iy);
    // Spread compares in float: the points are stored as float32.
    return c.count >= 2 &&
           (c.max_z - c.min_z) > static_cast<float>(spec_.height_threshold);
  }
  /// Points that fell outside the grid extent (or were not finite).
  size_t dropped() const { return dropped_; }

  double cell_center_x(int ix) const {
    return spec_.origin_x + (ix + 0.5) * spec_.resolution;
  }
  double cell_center_y(int iy) const {
    return spec_.origin_y + (iy + 0.5) * spec_.resolution;
  }

 private:
  GridSpec spec_;
  std::vector<HeightCell> cells_;
  size_t dropped_ = 0;
};

/// Bins a cloud into a fresh grid. Throws std::invalid_argument on a
/// non-positive resolution or cell count.
HeightGrid build_height_grid(const PointCloud& cloud, const GridSpec& spec);

/// One point per occupied cell, at the cell center with z = max height.
PointCloud occupied_points(const HeightGrid& grid);

}  // namespace navsim::perception
