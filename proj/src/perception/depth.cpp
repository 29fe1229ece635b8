#include "navsim/perception/depth.hpp"

#include <array>
#include <cmath>

namespace navsim::perception {
namespace {

// Camera-frame point for a pixel: x forward, y left, z up relative to the
// optical center (the mount height shifts z only, chords are unaffected).
std::array<double, 3> backproject(const DepthImage& img, int r, int c) {
  double left = 0.0, up = 0.0;
  pixel_ray(img.intr, r, c, left, up);
  const double d = img.at(r, c);
  return {d, d * left, d * up};
}

}  // namespace

DepthImage virtual_scan_filter(const DepthImage& img, double dot_threshold) {
  DepthImage out = img;
  std::vector<int> rows;
  rows.reserve(img.intr.rows);

  for (int c = 0; c < img.intr.cols; ++c) {
    rows.clear();
    // Bottom of the image first: the chain runs from near ground upward.
    for (int r = img.intr.rows - 1; r >= 0; --r)
      if (img.valid(r, c)) rows.push_back(r);
    if (rows.size() < 3) continue;

    for (size_t k = 1; k + 1 < rows.size(); ++k) {
      const auto a = backproject(img, rows[k - 1], c);
      const auto b = backproject(img, rows[k], c);
      const auto e = backproject(img, rows[k + 1], c);

      const double ab[3] = {b[0] - a[0], b[1] - a[1], b[2] - a[2]};
      const double bc[3] = {e[0] - b[0], e[1] - b[1], e[2] - b[2]};
      const double nab = std::sqrt(ab[0] * ab[0] + ab[1] * ab[1] + ab[2] * ab[2]);
      const double nbc = std::sqrt(bc[0] * bc[0] + bc[1] * bc[1] + bc[2] * bc[2]);
      if (nab < 1e-9 || nbc < 1e-9) continue;

      const double dot =
          std::abs(ab[0] * bc[0] + ab[1] * bc[1] + ab[2] * bc[2]) / (nab * nbc);
      const double flat_ab = std::hypot(ab[0], ab[1]) / nab;
      const double flat_bc = std::hypot(bc[0], bc[1]) / nbc;
      if (dot > dot_threshold && flat_ab > dot_threshold &&
          flat_bc > dot_threshold)
        out.at(rows[k], c) = 0.0f;
    }
  }
  return out;
}

PointCloud depth_to_cloud(const DepthImage& img) {
  PointCloud cloud;
  for (int r = 0; r < img.intr.rows; ++r) {
    for (int c = 0; c < img.intr.cols; ++c) {
      if (!img.valid(r, c)) continue;
      const auto p = backproject(img, r, c);
      const Vec2 xy = img.camera_pose.transform({p[0], p[1]});
      cloud.points.push_back({static_cast<float>(xy.x),
                              static_cast<float>(xy.y),
                              static_cast<float>(img.camera_height + p[2])});
    }
  }
  return cloud;
}

}  // namespace navsim::perception
