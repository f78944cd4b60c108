#pragma once

#include "esmicp/geometry.hpp"

namespace esmicp {

struct Svd3 {
  Mat3 u = Mat3::identity();
  Vec3 singular_values;  // descending, non-negative
  Mat3 v = Mat3::identity();

  Mat3 reconstruct() const;
};

// Deterministic one-sided Jacobi SVD of a 3x3 matrix. Rank-deficient
// inputs produce zero singular values; the corresponding U columns are
// completed to an orthonormal basis.
Svd3 svd3(const Mat3& h);

// Rotation and translation from a cross-covariance matrix H built as a
// sum of source-left outer products (s_i - s_bar)(t_j - t_bar)^T:
// R = V U^T with a reflection fix on the smallest singular direction,
// tau = t_bar - R s_bar. Throws "degenerate covariance" when all
// singular values vanish.
RigidTransform procrustes(const Mat3& cross_covariance, const Vec3& source_centroid,
                          const Vec3& target_centroid);

}  // namespace esmicp
