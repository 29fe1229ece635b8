#include "navsim/perception/point_cloud_io.hpp"

#include <cstdint>
#include <fstream>
#include <stdexcept>

namespace navsim::perception {

// The layout is defined little-endian; this code assumes a little-endian
// host, which covers every supported platform.
static_assert(sizeof(float) == 4);

void save_point_cloud(const PointCloud& cloud,
                      const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + file.string());
  const uint32_t count = static_cast<uint32_t>(cloud.points.size());
  out.write(reinterpret_cast<const char*>(&count), sizeof(count));
  for (const Point3& p : cloud.points) {
    const float xyz[3] = {p.x, p.y, p.z};
    out.write(reinterpret_cast<const char*>(xyz), sizeof(xyz));
  }
  if (!out) throw std::runtime_error("write failed: " + file.string());
}

PointCloud load_point_cloud(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  uint32_t count = 0;
  in.read(reinterpret_cast<char*>(&count), sizeof(count));
  if (!in) throw std::runtime_error("truncated header: " + file.string());

  PointCloud cloud;
  cloud.points.resize(count);
  for (Point3& p : cloud.points) {
    float xyz[3];
    in.read(reinterpret_cast<char*>(xyz), sizeof(xyz));
    if (!in) throw std::runtime_error("truncated cloud: " + file.string());
    p = {xyz[0], xyz[1], xyz[2]};
  }
  // A well-formed file ends exactly after the last point.
  in.peek();
  if (!in.eof())
    throw std::runtime_error("trailing bytes after cloud: " + file.string());
  return cloud;
}

}  // namespace navsim::perception
