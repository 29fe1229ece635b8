#pragma once

#include <filesystem>

#include "navsim/common/types.hpp"

namespace navsim::perception {

/// Binary cloud layout: uint32 point count, then count * (x, y, z) as
/// 32-bit floats. All fields little-endian. Colors are not stored.
void save_point_cloud(const PointCloud& cloud,
                      const std::filesystem::path& file);

/// Throws std::runtime_error on a missing, truncated, or oversized file.
PointCloud load_point_cloud(const std::filesystem::path& file);

}  // namespace navsim::perception
