#include "esmicp/geometry.hpp"

#include <algorithm>

namespace esmicp {

double orthogonality_defect(const Mat3& r) {
  Mat3 rtr = r.transpose() * r;
  Mat3 diff = rtr - Mat3::identity();
  return diff.max_abs();
}

bool is_rotation(const Mat3& r, double tol) {
  if (!r.finite()) return false;
  if (orthogonality_defect(r) > tol) return false;
  return std::abs(r.determinant() - 1.0) <= tol;
}

Mat3 euler_to_rotation(const EulerAngles& e) {
  const double cr = std::cos(e.roll), sr = std::sin(e.roll);
  const double cp = std::cos(e.pitch), sp = std::sin(e.pitch);
  const double cy = std::cos(e.yaw), sy = std::sin(e.yaw);

  Mat3 r;
  r.m[0][0] = cy * cp;
  r.m[0][1] = cy * sp * sr - sy * cr;
  r.m[0][2] = cy * sp * cr + sy * sr;
  r.m[1][0] = sy * cp;
  r.m[1][1] = sy * sp * sr + cy * cr;
  r.m[1][2] = sy * sp * cr - cy * sr;
  r.m[2][0] = -sp;
  r.m[2][1] = cp * sr;
  r.m[2][2] = cp * cr;
  return r;
}

EulerAngles rotation_to_euler(const Mat3& r) {
  if (!is_rotation(r, 1e-9)) {
    throw Error(Error::Code::invalid_argument,
                "rotation_to_euler: input is not a rotation matrix");
  }
  EulerAngles e;
  const double sp = std::clamp(-r.m[2][0], -1.0, 1.0);
  e.pitch = std::asin(sp);
  const double cp = std::sqrt(std::max(0.0, 1.0 - sp * sp));
  if (cp < 1e-9) {
    // Gimbal: roll fixed at 0, yaw carries the in-plane rotation.
    e.roll = 0.0;
    e.yaw = std::atan2(-r.m[0][1], r.m[1][1]);
  } else {
    e.roll = std::atan2(r.m[2][1], r.m[2][2]);
    e.yaw = std::atan2(r.m[1][0], r.m[0][0]);
  }
  return e;
}

std::array<double, 16> RigidTransform::homogeneous() const {
  std::array<double, 16> h{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) h[static_cast<std::size_t>(4 * i + j)] = rotation.m[i][j];
  h[3] = translation.x;
  h[7] = translation.y;
  h[11] = translation.z;
  h[15] = 1.0;
  return h;
}

RigidTransform RigidTransform::from_homogeneous(const double* m16, double tol) {
  RigidTransform t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t.rotation.m[i][j] = m16[4 * i + j];
  t.translation = {m16[3], m16[7], m16[11]};
  if (!is_rotation(t.rotation, tol)) {
    throw Error(Error::Code::invalid_argument,
                "from_homogeneous: rotation block is not special orthogonal");
  }
  const double bottom[4] = {m16[12], m16[13], m16[14], m16[15]};
  if (bottom[0] != 0.0 || bottom[1] != 0.0 || bottom[2] != 0.0 ||
      bottom[3] != 1.0) {
    throw Error(Error::Code::invalid_argument,
                "from_homogeneous: bottom row must be 0 0 0 1");
  }
  return t;
}

double RigidTransform::deviation_from_identity() const {
  double d = (rotation - Mat3::identity()).max_abs();
  d = std::max(d, std::abs(translation.x));
  d = std::max(d, std::abs(translation.y));
  d = std::max(d, std::abs(translation.z));
  return d;
}

RigidTransform compose(const RigidTransform& a, const RigidTransform& b) {
  RigidTransform r;
  r.rotation = a.rotation * b.rotation;
  r.translation = a.rotation * b.translation + a.translation;
  return r;
}

RigidTransform invert(const RigidTransform& t) {
  RigidTransform r;
  r.rotation = t.rotation.transpose();
  r.translation = (r.rotation * t.translation) * -1.0;
  return r;
}

Vec3 centroid(const PointCloud& cloud) {
  if (cloud.empty()) {
    throw Error(Error::Code::invalid_argument, "centroid: empty cloud");
  }
  Vec3 sum;
  for (const Vec3& p : cloud) sum += p;
  return sum / static_cast<double>(cloud.size());
}

PointCloud apply_transform(const PointCloud& cloud, const RigidTransform& t) {
  PointCloud out;
  out.reserve(cloud.size());
  for (const Vec3& p : cloud) out.push_back(t.apply(p));
  return out;
}

}  // namespace esmicp
