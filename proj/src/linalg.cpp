#include "esmicp/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace esmicp {

namespace {

Vec3 column(const Mat3& a, int j) { return {a.m[0][j], a.m[1][j], a.m[2][j]}; }

void set_column(Mat3& a, int j, const Vec3& v) {
  a.m[0][j] = v.x;
  a.m[1][j] = v.y;
  a.m[2][j] = v.z;
}

// Rotates columns p and q of a by (c, s).
void rotate_columns(Mat3& a, int p, int q, double c, double s) {
  for (int i = 0; i < 3; ++i) {
    const double ap = a.m[i][p];
    const double aq = a.m[i][q];
    a.m[i][p] = c * ap - s * aq;
    a.m[i][q] = s * ap + c * aq;
  }
}

// A unit vector orthogonal to u (u need not be normalized, u != 0).
Vec3 any_orthogonal(const Vec3& u) {
  const Vec3 axis = std::abs(u.x) <= std::abs(u.y) && std::abs(u.x) <= std::abs(u.z)
                        ? Vec3{1, 0, 0}
                        : (std::abs(u.y) <= std::abs(u.z) ? Vec3{0, 1, 0} : Vec3{0, 0, 1});
  Vec3 w = u.cross(axis);
  return w / w.norm();
}

}  // namespace

Mat3 Svd3::reconstruct() const {
  Mat3 d = Mat3::zero();
  d.m[0][0] = singular_values.x;
  d.m[1][1] = singular_values.y;
  d.m[2][2] = singular_values.z;
  return u * d * v.transpose();
}

Svd3 svd3(const Mat3& h) {
  if (!h.finite()) {
    throw Error(Error::Code::invalid_argument, "svd3: non-finite input");
  }

  // One-sided Jacobi: orthogonalize the columns of B = H V by plane
  // rotations accumulated into V; column norms become the singular
  // values and normalized columns of B become U.
  Mat3 b = h;
  Mat3 v = Mat3::identity();

  constexpr int kMaxSweeps = 60;
  constexpr double kEps = 1e-15;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        const Vec3 bp = column(b, p);
        const Vec3 bq = column(b, q);
        const double alpha = bp.dot(bp);
        const double beta = bq.dot(bq);
        const double gamma = bp.dot(bq);
        if (std::abs(gamma) <= kEps * std::sqrt(alpha * beta)) continue;
        off = std::max(off, std::abs(gamma));

        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        rotate_columns(b, p, q, c, s);
        rotate_columns(v, p, q, c, s);
      }
    }
    if (off == 0.0) break;
  }

  // Sort columns by descending norm; keep U/V pairing consistent.
  std::array<int, 3> order = {0, 1, 2};
  std::array<double, 3> norms = {column(b, 0).norm(), column(b, 1).norm(),
                                 column(b, 2).norm()};
  std::sort(order.begin(), order.end(), [&](int a, int c) {
    if (norms[static_cast<std::size_t>(a)] != norms[static_cast<std::size_t>(c)])
      return norms[static_cast<std::size_t>(a)] > norms[static_cast<std::size_t>(c)];
    return a < c;
  });

  Svd3 out;
  Mat3 u = Mat3::zero();
  Mat3 vs = Mat3::zero();
  double sv[3];
  for (int k = 0; k < 3; ++k) {
    const int src = order[static_cast<std::size_t>(k)];
    sv[k] = norms[static_cast<std::size_t>(src)];
    set_column(vs, k, column(v, src));
    if (sv[k] > 0.0) {
      set_column(u, k, column(b, src) / sv[k]);
    }
  }

  // Complete U for vanished singular values.
  if (sv[0] == 0.0) {
    u = Mat3::identity();
  } else {
    if (sv[1] == 0.0) {
      set_column(u, 1, any_orthogonal(column(u, 0)));
    }
    if (sv[2] == 0.0) {
      const Vec3 u2 = column(u, 0).cross(column(u, 1));
      set_column(u, 2, u2 / u2.norm());
    }
  }

  out.u = u;
  out.v = vs;
  out.singular_values = {sv[0], sv[1], sv[2]};
  return out;
}

RigidTransform procrustes(const Mat3& cross_covariance, const Vec3& source_centroid,
                          const Vec3& target_centroid) {
  if (!cross_covariance.finite()) {
    throw Error(Error::Code::invalid_argument, "procrustes: non-finite covariance");
  }
  Svd3 svd = svd3(cross_covariance);
  if (svd.singular_values.x < 1e-15 && svd.singular_values.y < 1e-15 &&
      svd.singular_values.z < 1e-15) {
    throw Error(Error::Code::solver, "degenerate covariance");
  }

  Mat3 r = svd.v * svd.u.transpose();
  if (r.determinant() < 0.0) {
    // Reflection: flip the V column of the smallest singular value.
    Mat3 v = svd.v;
    for (int i = 0; i < 3; ++i) v.m[i][2] = -v.m[i][2];
    r = v * svd.u.transpose();
  }

  RigidTransform t;
  t.rotation = r;
  t.translation = target_centroid - r * source_centroid;
  return t;
}

}  // namespace esmicp
