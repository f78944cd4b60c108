#include "esmicp/kdtree.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace esmicp {

namespace {

constexpr std::size_t kLeafSize = 12;

double coord(const Vec3& p, int axis) {
  switch (axis) {
    case 0: return p.x;
    case 1: return p.y;
    default: return p.z;
  }
}

}  // namespace

KdTree::KdTree(PointCloud target) : points_(std::move(target)) {
  if (points_.empty()) {
    throw Error(Error::Code::invalid_argument, "build_index: empty cloud");
  }
  for (const Vec3& p : points_) {
    if (!p.finite()) {
      throw Error(Error::Code::invalid_argument, "build_index: non-finite point");
    }
  }
  indices_.resize(points_.size());
  std::iota(indices_.begin(), indices_.end(), std::size_t{0});
  nodes_.reserve(2 * points_.size() / kLeafSize + 2);
  root_ = build(0, points_.size());
}

int KdTree::build(std::size_t begin, std::size_t end) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.emplace_back();
  nodes_[static_cast<std::size_t>(id)].begin = begin;
  nodes_[static_cast<std::size_t>(id)].end = end;
  if (end - begin <= kLeafSize) return id;

  // Split on the widest axis of the subset's bounding box.
  Vec3 lo = points_[indices_[begin]];
  Vec3 hi = lo;
  for (std::size_t i = begin + 1; i < end; ++i) {
    const Vec3& p = points_[indices_[i]];
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
  }
  const Vec3 ext = hi - lo;
  const int axis = ext.x >= ext.y ? (ext.x >= ext.z ? 0 : 2) : (ext.y >= ext.z ? 1 : 2);
  if (coord(ext, axis) == 0.0) return id;  // all points coincide: keep as leaf

  const std::size_t mid = begin + (end - begin) / 2;
  std::nth_element(indices_.begin() + static_cast<std::ptrdiff_t>(begin),
                   indices_.begin() + static_cast<std::ptrdiff_t>(mid),
                   indices_.begin() + static_cast<std::ptrdiff_t>(end),
                   [&](std::size_t a, std::size_t b) {
                     const double ca = coord(points_[a], axis);
                     const double cb = coord(points_[b], axis);
                     if (ca != cb) return ca < cb;
                     return a < b;
                   });

  const double split = coord(points_[indices_[mid]], axis);
  const int lo_child = build(begin, mid);
  const int hi_child = build(mid, end);
  Node& node = nodes_[static_cast<std::size_t>(id)];
  node.child_lo = lo_child;
  node.child_hi = hi_child;
  node.axis = axis;
  node.split = split;
  return id;
}

void KdTree::search(int node_id, const Vec3& query, std::size_t& best_index,
                    double& best_sq) const {
  const Node& node = nodes_[static_cast<std::size_t>(node_id)];
  if (node.child_lo < 0) {
    for (std::size_t i = node.begin; i < node.end; ++i) {
      const std::size_t idx = indices_[i];
      const double d2 = (points_[idx] - query).squared_norm();
      if (d2 < best_sq || (d2 == best_sq && idx < best_index)) {
        best_sq = d2;
        best_index = idx;
      }
    }
    return;
  }

  const double delta = coord(query, node.axis) - node.split;
  const int near = delta < 0.0 ? node.child_lo : node.child_hi;
  const int far = delta < 0.0 ? node.child_hi : node.child_lo;
  search(near, query, best_index, best_sq);
  // Strict comparison keeps equal-distance candidates reachable so the
  // lowest-index tie rule holds globally.
  if (delta * delta > best_sq) return;
  search(far, query, best_index, best_sq);
}

std::pair<std::size_t, double> KdTree::nearest(const Vec3& query) const {
  std::size_t best_index = std::numeric_limits<std::size_t>::max();
  double best_sq = std::numeric_limits<double>::infinity();
  search(root_, query, best_index, best_sq);
  return {best_index, std::sqrt(best_sq)};
}

Correspondences find_correspondences(const PointCloud& source, const KdTree& index) {
  if (source.empty()) {
    throw Error(Error::Code::invalid_argument, "find_correspondences: empty source");
  }
  Correspondences corr;
  corr.target_index.reserve(source.size());
  corr.distance.reserve(source.size());
  for (const Vec3& p : source) {
    const auto [idx, dist] = index.nearest(p);
    corr.target_index.push_back(idx);
    corr.distance.push_back(dist);
  }
  return corr;
}

}  // namespace esmicp
