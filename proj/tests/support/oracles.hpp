// Independent reference computations the implementation is checked
// against. These deliberately avoid the library's own numeric paths:
// nearest neighbors by exhaustive scan, rotations via Eigen, sums in
// extended precision.
#pragma once

#include <Eigen/Dense>
#include <limits>
#include <vector>

#include "esmicp/geometry.hpp"
#include "esmicp/kdtree.hpp"

namespace esmicp::test {

// Exhaustive nearest neighbor with the lowest-index tie rule.
inline std::pair<std::size_t, double> brute_force_nearest(const PointCloud& target,
                                                          const Vec3& query) {
  std::size_t best = 0;
  double best_sq = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < target.size(); ++j) {
    const double d2 = (target[j] - query).squared_norm();
    if (d2 < best_sq) {
      best_sq = d2;
      best = j;
    }
  }
  return {best, std::sqrt(best_sq)};
}

inline Correspondences brute_force_correspondences(const PointCloud& source,
                                                   const PointCloud& target) {
  Correspondences corr;
  for (const Vec3& s : source) {
    const auto [idx, dist] = brute_force_nearest(target, s);
    corr.target_index.push_back(idx);
    corr.distance.push_back(dist);
  }
  return corr;
}

// Neumaier-compensated mean, as an oracle for plain summation.
inline Vec3 compensated_centroid(const PointCloud& cloud) {
  double sum[3] = {0, 0, 0};
  double comp[3] = {0, 0, 0};
  auto accumulate = [&](int k, double v) {
    const double t = sum[k] + v;
    if (std::abs(sum[k]) >= std::abs(v)) {
      comp[k] += (sum[k] - t) + v;
    } else {
      comp[k] += (v - t) + sum[k];
    }
    sum[k] = t;
  };
  for (const Vec3& p : cloud) {
    accumulate(0, p.x);
    accumulate(1, p.y);
    accumulate(2, p.z);
  }
  const double n = static_cast<double>(cloud.size());
  return {(sum[0] + comp[0]) / n, (sum[1] + comp[1]) / n, (sum[2] + comp[2]) / n};
}

inline Eigen::Matrix3d to_eigen(const Mat3& a) {
  Eigen::Matrix3d e;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) e(i, j) = a.m[i][j];
  return e;
}

inline Mat3 from_eigen(const Eigen::Matrix3d& e) {
  Mat3 a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a.m[i][j] = e(i, j);
  return a;
}

// Singular values of H as sqrt of the eigenvalues of H^T H, descending.
inline Vec3 singular_values_via_eigen(const Mat3& h) {
  const Eigen::Matrix3d e = to_eigen(h);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(e.transpose() * e);
  const Eigen::Vector3d ev = solver.eigenvalues();  // ascending
  return {std::sqrt(std::max(0.0, ev(2))), std::sqrt(std::max(0.0, ev(1))),
          std::sqrt(std::max(0.0, ev(0)))};
}

// Textbook point-to-point ICP step: exhaustive correspondences, plain
// centroids of both full sets, H from source-left outer products, and
// Eigen's SVD with the usual reflection fix.
inline RigidTransform classic_icp_step_oracle(const PointCloud& source,
                                              const PointCloud& target) {
  const Correspondences corr = brute_force_correspondences(source, target);
  const Vec3 s_bar = centroid(source);
  const Vec3 t_bar = centroid(target);

  Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
  for (std::size_t i = 0; i < source.size(); ++i) {
    const Vec3 s = source[i] - s_bar;
    const Vec3 t = target[corr.target_index[i]] - t_bar;
    const Eigen::Vector3d es(s.x, s.y, s.z);
    const Eigen::Vector3d et(t.x, t.y, t.z);
    h += es * et.transpose();
  }

  Eigen::JacobiSVD<Eigen::Matrix3d> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d u = svd.matrixU();
  Eigen::Matrix3d v = svd.matrixV();
  if ((v * u.transpose()).determinant() < 0.0) {
    v.col(2) *= -1.0;
  }
  const Eigen::Matrix3d r = v * u.transpose();

  RigidTransform out;
  out.rotation = from_eigen(r);
  out.translation = t_bar - out.rotation * s_bar;
  return out;
}

inline double max_entry_diff(const Mat3& a, const Mat3& b) { return (a - b).max_abs(); }

inline double max_transform_diff(const RigidTransform& a, const RigidTransform& b) {
  double d = max_entry_diff(a.rotation, b.rotation);
  d = std::max(d, std::abs(a.translation.x - b.translation.x));
  d = std::max(d, std::abs(a.translation.y - b.translation.y));
  d = std::max(d, std::abs(a.translation.z - b.translation.z));
  return d;
}

}  // namespace esmicp::test
