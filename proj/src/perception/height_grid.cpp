#include "navsim/perception/height_grid.hpp"

#include <cmath>
#include <stdexcept>

namespace navsim::perception {

HeightGrid::HeightGrid(const GridSpec& spec) : spec_(spec) {
  if (spec.resolution <= 0.0 || spec.cells_x <= 0 || spec.cells_y <= 0)
    throw std::invalid_argument("grid needs positive resolution and extent");
  cells_.resize(static_cast<size_t>(spec.cells_x) * spec.cells_y);
}

void HeightGrid::add(const Point3& p) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
    ++dropped_;
    return;
  }
  const int ix = static_cast<int>(std::floor((p.x - spec_.origin_x) / spec_.resolution));
  const int iy = static_cast<int>(std::floor((p.y - spec_.origin_y) / spec_.resolution));
  if (ix < 0 || ix >= spec_.cells_x || iy < 0 || iy >= spec_.cells_y) {
    ++dropped_;
    return;
  }
  HeightCell& c = cells_[static_cast<size_t>(iy) * spec_.cells_x + ix];
  if (c.count == 0) {
    c.min_z = c.max_z = p.z;
  } else {
    if (p.z < c.min_z) c.min_z = p.z;
    if (p.z > c.max_z) c.max_z = p.z;
  }
  ++c.count;
}

HeightGrid build_height_grid(const PointCloud& cloud, const GridSpec& spec) {
  HeightGrid grid(spec);
  for (const Point3& p : cloud.points) grid.add(p);
  return grid;
}

PointCloud occupied_points(const HeightGrid& grid) {
  PointCloud out;
  const GridSpec& spec = grid.spec();
  for (int iy = 0; iy < spec.cells_y; ++iy)
    for (int ix = 0; ix < spec.cells_x; ++ix)
      if (grid.occupied(ix, iy))
        out.points.push_back({static_cast<float>(grid.cell_center_x(ix)),
                              static_cast<float>(grid.cell_center_y(iy)),
                              grid.cell(ix, iy).max_z});
  return out;
}

}  // namespace navsim::perception
