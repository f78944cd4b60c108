// Deterministic generators shared by the test suites.
#pragma once

#include <cmath>
#include <random>

#include "esmicp/geometry.hpp"

namespace esmicp::test {

inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

// Uniform rotation via Shoemake's quaternion construction.
inline Mat3 random_rotation(std::mt19937_64& rng) {
  const double u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  const double u3 = uniform01(rng);
  const double a = std::sqrt(1.0 - u1), b = std::sqrt(u1);
  const double x = a * std::sin(2.0 * M_PI * u2);
  const double y = a * std::cos(2.0 * M_PI * u2);
  const double z = b * std::sin(2.0 * M_PI * u3);
  const double w = b * std::cos(2.0 * M_PI * u3);

  Mat3 r;
  r.m[0][0] = 1 - 2 * (y * y + z * z);
  r.m[0][1] = 2 * (x * y - z * w);
  r.m[0][2] = 2 * (x * z + y * w);
  r.m[1][0] = 2 * (x * y + z * w);
  r.m[1][1] = 1 - 2 * (x * x + z * z);
  r.m[1][2] = 2 * (y * z - x * w);
  r.m[2][0] = 2 * (x * z - y * w);
  r.m[2][1] = 2 * (y * z + x * w);
  r.m[2][2] = 1 - 2 * (x * x + y * y);
  return r;
}

inline RigidTransform random_transform(std::mt19937_64& rng, double translation_scale = 1.0) {
  RigidTransform t;
  t.rotation = random_rotation(rng);
  t.translation = {uniform(rng, -translation_scale, translation_scale),
                   uniform(rng, -translation_scale, translation_scale),
                   uniform(rng, -translation_scale, translation_scale)};
  return t;
}

inline Mat3 random_mat3(std::mt19937_64& rng, double scale = 1.0) {
  Mat3 a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a.m[i][j] = uniform(rng, -scale, scale);
  return a;
}

inline PointCloud random_cloud(std::mt19937_64& rng, std::size_t n, double half_extent = 1.0) {
  PointCloud cloud;
  cloud.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    cloud.push_back({uniform(rng, -half_extent, half_extent),
                     uniform(rng, -half_extent, half_extent),
                     uniform(rng, -half_extent, half_extent)});
  }
  return cloud;
}

}  // namespace esmicp::test
