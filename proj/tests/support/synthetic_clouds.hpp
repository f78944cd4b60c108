// Deterministic surface fixtures. The registration experiments need
// asymmetric closed surfaces (symmetric shapes admit alignment flips
// that poison ground-truth comparisons), so the generator superimposes
// incommensurate trigonometric bumps on a sphere and samples it with a
// Fibonacci lattice. No randomness: the same call always yields the
// same cloud.
#pragma once

#include <algorithm>
#include <cmath>

#include "esmicp/geometry.hpp"

namespace esmicp::test {

inline double bump_radius(const Vec3& dir) {
  const double theta = std::acos(std::clamp(dir.z, -1.0, 1.0));
  const double phi = std::atan2(dir.y, dir.x);
  return 1.0 + 0.21 * std::sin(3.0 * theta) * std::cos(2.0 * phi + 0.9) +
         0.13 * std::sin(2.0 * theta + 1.1) * std::sin(5.0 * phi) +
         0.07 * std::cos(7.0 * phi + 0.4) * std::sin(theta) +
         0.05 * std::cos(4.0 * theta + 2.0);
}

// Closed bumpy surface with roughly unit extent, n points.
inline PointCloud blob_surface(std::size_t n, double scale = 1.0) {
  PointCloud cloud;
  cloud.reserve(n);
  const double golden = 0.6180339887498949;
  for (std::size_t i = 0; i < n; ++i) {
    const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    const double r_xy = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = 2.0 * M_PI * std::fmod(static_cast<double>(i) * golden, 1.0);
    const Vec3 dir{r_xy * std::cos(phi), r_xy * std::sin(phi), z};
    const double rho = bump_radius(dir) * scale;
    cloud.push_back(dir * rho);
  }
  return cloud;
}

// Stand-in for the Stanford bunny scans used by the reproduction
// experiments: same bounding-box extents (about 0.156 x 0.154 x 0.121
// model units) and a comparable surface point budget. See
// tests/README note in the top-level README for substituting the real
// scan.
inline PointCloud bunny_stand_in(std::size_t n = 34000) {
  PointCloud raw = blob_surface(n);

  Vec3 lo = raw[0], hi = raw[0];
  for (const Vec3& p : raw) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
  }
  const Vec3 target_extent{0.156, 0.154, 0.121};
  const Vec3 target_lo{-0.095, 0.033, -0.062};

  PointCloud out;
  out.reserve(raw.size());
  for (const Vec3& p : raw) {
    out.push_back({target_lo.x + (p.x - lo.x) / (hi.x - lo.x) * target_extent.x,
                   target_lo.y + (p.y - lo.y) / (hi.y - lo.y) * target_extent.y,
                   target_lo.z + (p.z - lo.z) / (hi.z - lo.z) * target_extent.z});
  }
  return out;
}

}  // namespace esmicp::test
