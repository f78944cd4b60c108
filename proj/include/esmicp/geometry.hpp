#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace esmicp {

// Raised by every operation in the library on precondition or I/O failure.
// The code loosely classifies the failure for the C API boundary.
class Error : public std::runtime_error {
 public:
  enum class Code { invalid_argument, io, parse, solver };

  Error(Code code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Code code() const { return code_; }

 private:
  Code code_;
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3() = default;
  Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }

  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double squared_norm() const { return dot(*this); }
  double norm() const { return std::sqrt(squared_norm()); }

  bool finite() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

using Point3 = Vec3;
using PointCloud = std::vector<Point3>;

struct Mat3 {
  // Row-major 3x3.
  std::array<std::array<double, 3>, 3> m{};

  static Mat3 identity() {
    Mat3 r;
    r.m[0][0] = r.m[1][1] = r.m[2][2] = 1.0;
    return r;
  }
  static Mat3 zero() { return Mat3{}; }

  double& operator()(int i, int j) { return m[i][j]; }
  double operator()(int i, int j) const { return m[i][j]; }

  Mat3 transpose() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.m[j][i] = m[i][j];
    return r;
  }

  Mat3 operator*(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double s = 0.0;
        for (int k = 0; k < 3; ++k) s += m[i][k] * o.m[k][j];
        r.m[i][j] = s;
      }
    return r;
  }

  Vec3 operator*(const Vec3& v) const {
    return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
  }

  Mat3 operator-(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.m[i][j] = m[i][j] - o.m[i][j];
    return r;
  }

  Mat3 operator+(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.m[i][j] = m[i][j] + o.m[i][j];
    return r;
  }

  Mat3 operator*(double s) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.m[i][j] = m[i][j] * s;
    return r;
  }

  double determinant() const {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  }

  double max_abs() const {
    double r = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r = std::max(r, std::abs(m[i][j]));
    return r;
  }

  bool finite() const {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (!std::isfinite(m[i][j])) return false;
    return true;
  }
};

// Adds the outer product a * b^T to dst.
inline void add_outer(Mat3& dst, const Vec3& a, const Vec3& b) {
  dst.m[0][0] += a.x * b.x;
  dst.m[0][1] += a.x * b.y;
  dst.m[0][2] += a.x * b.z;
  dst.m[1][0] += a.y * b.x;
  dst.m[1][1] += a.y * b.y;
  dst.m[1][2] += a.y * b.z;
  dst.m[2][0] += a.z * b.x;
  dst.m[2][1] += a.z * b.y;
  dst.m[2][2] += a.z * b.z;
}

// Max-norm of R^T R - I; a proper rotation also needs det(R) = +1.
double orthogonality_defect(const Mat3& r);
bool is_rotation(const Mat3& r, double tol = 1e-10);

struct EulerAngles {
  double roll = 0.0;   // about x
  double pitch = 0.0;  // about y
  double yaw = 0.0;    // about z
};

// Extrinsic x-y-z convention: R = Rz(yaw) * Ry(pitch) * Rx(roll).
Mat3 euler_to_rotation(const EulerAngles& e);

// Inverse of euler_to_rotation. Pitch lands in [-pi/2, pi/2]; at the
// gimbal singularity |pitch| = pi/2 the roll is fixed to 0 and yaw
// absorbs the remaining rotation. Throws on non-rotation input.
EulerAngles rotation_to_euler(const Mat3& r);

struct RigidTransform {
  Mat3 rotation = Mat3::identity();
  Vec3 translation;

  static RigidTransform identity() { return {}; }

  Vec3 apply(const Vec3& p) const { return rotation * p + translation; }

  // Row-major homogeneous 4x4.
  std::array<double, 16> homogeneous() const;
  static RigidTransform from_homogeneous(const double* m16, double tol = 1e-9);

  // Max-norm distance of the homogeneous form from the identity.
  double deviation_from_identity() const;
};

// Result applies b first, then a.
RigidTransform compose(const RigidTransform& a, const RigidTransform& b);
RigidTransform invert(const RigidTransform& t);

Vec3 centroid(const PointCloud& cloud);
PointCloud apply_transform(const PointCloud& cloud, const RigidTransform& t);

}  // namespace esmicp
