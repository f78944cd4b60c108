#include "esmicp/metrics.hpp"

#include <cmath>

#include "esmicp/kdtree.hpp"

namespace esmicp {

namespace {

void require_rotation(const Mat3& r, const char* who) {
  if (!is_rotation(r, 1e-9)) {
    throw Error(Error::Code::invalid_argument,
                std::string(who) + ": input is not a rotation matrix");
  }
}

double wrap_angle(double a) {
  a = std::fmod(a, 2.0 * M_PI);
  if (a > M_PI) a -= 2.0 * M_PI;
  if (a <= -M_PI) a += 2.0 * M_PI;
  return a;
}

}  // namespace

MetricTriple rotation_error(const Mat3& estimated, const Mat3& ground_truth) {
  require_rotation(estimated, "rotation_error");
  require_rotation(ground_truth, "rotation_error");
  MetricTriple t;
  double sq = 0.0, abs = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double d = estimated.m[i][j] - ground_truth.m[i][j];
      sq += d * d;
      abs += std::abs(d);
    }
  }
  t.mse = sq / 9.0;
  t.rmse = std::sqrt(t.mse);
  t.mae = abs / 9.0;
  return t;
}

MetricTriple rotation_error_euler(const Mat3& estimated, const Mat3& ground_truth) {
  const EulerAngles a = rotation_to_euler(estimated);
  const EulerAngles b = rotation_to_euler(ground_truth);
  const double d[3] = {wrap_angle(a.roll - b.roll), wrap_angle(a.pitch - b.pitch),
                       wrap_angle(a.yaw - b.yaw)};
  MetricTriple t;
  for (double v : d) {
    t.mse += v * v / 3.0;
    t.mae += std::abs(v) / 3.0;
  }
  t.rmse = std::sqrt(t.mse);
  return t;
}

MetricTriple translation_error(const Vec3& estimated, const Vec3& ground_truth) {
  const Vec3 d = estimated - ground_truth;
  MetricTriple t;
  t.mse = d.squared_norm() / 3.0;
  t.rmse = std::sqrt(t.mse);
  t.mae = (std::abs(d.x) + std::abs(d.y) + std::abs(d.z)) / 3.0;
  return t;
}

ErrorReport transform_error(const RigidTransform& estimated,
                            const RigidTransform& ground_truth) {
  ErrorReport report;
  report.rotation = rotation_error(estimated.rotation, ground_truth.rotation);
  report.translation = translation_error(estimated.translation, ground_truth.translation);
  return report;
}

double correspondence_rmse(const PointCloud& source, const PointCloud& target,
                           const RigidTransform& transform) {
  if (source.empty() || target.empty()) {
    throw Error(Error::Code::invalid_argument, "correspondence_rmse: empty cloud");
  }
  const KdTree index(target);
  double sum = 0.0;
  for (const Vec3& s : source) {
    const Vec3 moved = transform.apply(s);
    const auto [idx, dist] = index.nearest(moved);
    (void)idx;
    sum += dist * dist;
  }
  return std::sqrt(sum / static_cast<double>(source.size()));
}

}  // namespace esmicp
