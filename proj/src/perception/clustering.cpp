#include "navsim/perception/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace navsim::perception {
namespace {

// Union-find with the smallest index as the canonical root, so component
// labels do not depend on merge order.
class UnionFind {
 public:
  explicit UnionFind(size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), size_t{0});
  }
  size_t find(size_t a) {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }
  void unite(size_t a, size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<size_t> parent_;
};

uint64_t cell_key(int gx, int gy) {
  return (static_cast<uint64_t>(static_cast<uint32_t>(gx)) << 32) |
         static_cast<uint32_t>(gy);
}

}  // namespace

std::vector<std::vector<size_t>> cluster_obstacles(const PointCloud& cloud,
                                                   double eps, int min_pts) {
  if (eps <= 0.0) throw std::invalid_argument("eps must be positive");
  if (min_pts < 1) throw std::invalid_argument("min_pts must be at least 1");

  const size_t n = cloud.points.size();
  const double eps2 = eps * eps;

  std::unordered_map<uint64_t, std::vector<size_t>> grid;
  grid.reserve(n * 2);
  auto cell_of = [&](size_t i) {
    const Point3& p = cloud.points[i];
    return std::pair<int, int>{static_cast<int>(std::floor(p.x / eps)),
                               static_cast<int>(std::floor(p.y / eps))};
  };
  for (size_t i = 0; i < n; ++i) {
    const auto [gx, gy] = cell_of(i);
    grid[cell_key(gx, gy)].push_back(i);
  }

  auto for_each_neighbor = [&](size_t i, auto&& fn) {
    const Point3& p = cloud.points[i];
    const auto [gx, gy] = cell_of(i);
    for (int dx = -1; dx <= 1; ++dx)
      for (int dy = -1; dy <= 1; ++dy) {
        const auto it = grid.find(cell_key(gx + dx, gy + dy));
        if (it == grid.end()) continue;
        for (size_t j : it->second) {
          const Point3& q = cloud.points[j];
          const double ddx = p.x - q.x, ddy = p.y - q.y;
          if (ddx * ddx + ddy * ddy <= eps2) fn(j);
        }
      }
  };

  std::vector<bool> core(n, false);
  for (size_t i = 0; i < n; ++i) {
    int count = 0;
    for_each_neighbor(i, [&](size_t) { ++count; });
    core[i] = count >= min_pts;
  }

  UnionFind uf(n);
  for (size_t i = 0; i < n; ++i) {
    if (!core[i]) continue;
    for_each_neighbor(i, [&](size_t j) {
      if (core[j]) uf.unite(i, j);
    });
  }

  // Border points pick their nearest core neighbor; ties resolve by
  // coordinates so shuffled input yields the same partition.
  std::vector<size_t> attach(n, std::numeric_limits<size_t>::max());
  for (size_t i = 0; i < n; ++i) {
    if (core[i]) continue;
    double best_d2 = std::numeric_limits<double>::infinity();
    size_t best = std::numeric_limits<size_t>::max();
    for_each_neighbor(i, [&](size_t j) {
      if (!core[j]) return;
      const Point3& p = cloud.points[i];
      const Point3& q = cloud.points[j];
      const double d2 = (p.x - q.x) * (double)(p.x - q.x) +
                        (p.y - q.y) * (double)(p.y - q.y);
      const bool better =
          d2 < best_d2 - 1e-12 ||
          (std::abs(d2 - best_d2) <= 1e-12 && best != std::numeric_limits<size_t>::max() &&
           std::tuple(cloud.points[j].x, cloud.points[j].y, cloud.points[j].z) <
               std::tuple(cloud.points[best].x, cloud.points[best].y,
                          cloud.points[best].z));
      if (best == std::numeric_limits<size_t>::max() ? d2 <= eps2 : better) {
        best_d2 = d2;
        best = j;
      }
    });
    attach[i] = best;
  }

  std::unordered_map<size_t, std::vector<size_t>> by_root;
  for (size_t i = 0; i < n; ++i) {
    if (core[i])
      by_root[uf.find(i)].push_back(i);
    else if (attach[i] != std::numeric_limits<size_t>::max())
      by_root[uf.find(attach[i])].push_back(i);
  }

  std::vector<std::vector<size_t>> clusters;
  clusters.reserve(by_root.size());
  for (auto& [root, members] : by_root) {
    std::sort(members.begin(), members.end());
    clusters.push_back(std::move(members));
  }
  std::sort(clusters.begin(), clusters.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return clusters;
}

}  // namespace navsim::perception
