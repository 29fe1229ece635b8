#pragma once

#include <cmath>
#include <vector>

#include "navsim/common/angles.hpp"
#include "navsim/common/types.hpp"

namespace navsim::perception {

/// Pinhole intrinsics. The vertical field of view defaults to matching
/// square pixels for the image aspect ratio.
struct CameraIntrinsics {
  int rows = 108;
  int cols = 216;
  double hfov = deg_to_rad(40.0);  // full horizontal field of view, radians
  double vfov = 2.0 * std::atan(std::tan(deg_to_rad(40.0) / 2.0) * 108.0 / 216.0);

  double fx() const { return (cols / 2.0) / std::tan(hfov / 2.0); }
  double fy() const { return (rows / 2.0) / std::tan(vfov / 2.0); }
};

/// Depth image. depth(r, c) is the forward-axis distance (z-depth) of the
/// surface seen through the pixel center; zero or non-finite marks an
/// invalid pixel. Row 0 is the top of the image. camera_pose (x, y, yaw)
/// and camera_height place the optical center in the vehicle frame, with
/// the camera level and looking along +x of its pose.
struct DepthImage {
  CameraIntrinsics intr;
  Pose2D camera_pose;
  double camera_height = 1.8;
  std::vector<float> depth;  // rows * cols, row-major

  float at(int r, int c) const { return depth[static_cast<size_t>(r) * intr.cols + c]; }
  float& at(int r, int c) { return depth[static_cast<size_t>(r) * intr.cols + c]; }
  bool valid(int r, int c) const {
    const float d = at(r, c);
    return std::isfinite(d) && d > 0.0f;
  }
};

/// Camera-frame ray direction through the pixel center (unnormalized,
/// forward component 1): (1, left, up).
inline void pixel_ray(const CameraIntrinsics& intr, int r, int c,
                      double& left, double& up) {
  left = -((c + 0.5) - intr.cols / 2.0) / intr.fx();
  up = (intr.rows / 2.0 - (r + 0.5)) / intr.fy();
}

/// Ground and outlier suppression over each image column. Walking the
/// column's valid pixels as a chain of 3D points, a pixel is blanked when
/// the chords to its previous and next valid neighbors are collinear
/// (|cos| above dot_threshold) and both chords lie near the horizontal
/// plane (elevation cosine above the same threshold). Upright structure
/// produces steep chords and always survives; a pixel whose triple fails
/// the collinearity test is never removed. Chain endpoints are kept.
DepthImage virtual_scan_filter(const DepthImage& img,
                               double dot_threshold = 0.985);

/// Back-projects valid pixels into a vehicle-frame cloud using the pinhole
/// model and the camera mounting pose.
PointCloud depth_to_cloud(const DepthImage& img);

}  // namespace navsim::perception
