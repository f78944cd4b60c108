#pragma once

#include "esmicp/geometry.hpp"

namespace esmicp {

struct MetricTriple {
  double mse = 0.0;
  double rmse = 0.0;
  double mae = 0.0;
};

struct ErrorReport {
  MetricTriple rotation;
  MetricTriple translation;
};

// Element-wise residuals over the 9 rotation-matrix entries:
// mse = sum((dR_ij)^2)/9, rmse = sqrt(mse), mae = sum(|dR_ij|)/9.
// Throws when either input fails the rotation invariants.
MetricTriple rotation_error(const Mat3& estimated, const Mat3& ground_truth);

// Euler-residual variant (radians) for cross-checking; angle differences
// are wrapped to (-pi, pi] before averaging over the 3 axes.
MetricTriple rotation_error_euler(const Mat3& estimated, const Mat3& ground_truth);

// Component-wise over the 3 translation entries.
MetricTriple translation_error(const Vec3& estimated, const Vec3& ground_truth);

ErrorReport transform_error(const RigidTransform& estimated,
                            const RigidTransform& ground_truth);

// sqrt(mean_i ||T(s_i) - t_c(i)||^2) with c from a fresh exact NN pass.
double correspondence_rmse(const PointCloud& source, const PointCloud& target,
                           const RigidTransform& transform);

}  // namespace esmicp
