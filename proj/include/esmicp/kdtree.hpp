#pragma once

#include <cstddef>
#include <vector>

#include "esmicp/geometry.hpp"

namespace esmicp {

// Per-source-point nearest target index and Euclidean distance.
struct Correspondences {
  std::vector<std::size_t> target_index;
  std::vector<double> distance;

  std::size_t size() const { return target_index.size(); }
};

// Exact nearest-neighbor index over a fixed target cloud. Queries are
// tie-broken toward the lowest target index, so results match a linear
// scan with the same rule. Immutable after construction; concurrent
// queries are safe.
class KdTree {
 public:
  explicit KdTree(PointCloud target);

  std::size_t size() const { return points_.size(); }
  const PointCloud& points() const { return points_; }

  // Returns (target index, Euclidean distance).
  std::pair<std::size_t, double> nearest(const Vec3& query) const;

 private:
  struct Node {
    // Leaf when child_lo < 0: [begin, end) into indices_.
    int child_lo = -1;
    int child_hi = -1;
    int axis = 0;
    double split = 0.0;
    std::size_t begin = 0;
    std::size_t end = 0;
  };

  int build(std::size_t begin, std::size_t end);
  void search(int node_id, const Vec3& query, std::size_t& best_index,
              double& best_sq) const;

  PointCloud points_;
  std::vector<std::size_t> indices_;
  std::vector<Node> nodes_;
  int root_ = -1;
};

Correspondences find_correspondences(const PointCloud& source, const KdTree& index);

}  // namespace esmicp
