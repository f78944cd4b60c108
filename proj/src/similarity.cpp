#include "esmicp/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace esmicp {

double gaussian_weight(double distance, const KernelParams& params) {
  if (params.sigma <= 0.0) {
    throw Error(Error::Code::invalid_argument, "gaussian_weight: sigma must be > 0");
  }
  if (distance < 0.0) {
    throw Error(Error::Code::invalid_argument, "gaussian_weight: negative distance");
  }
  return std::exp(-(distance * distance) / (2.0 * params.sigma * params.sigma));
}

SimilarityMatrix build_similarity(const Correspondences& corr,
                                  const KernelParams& params, bool normalize) {
  if (params.sigma <= 0.0) {
    throw Error(Error::Code::invalid_argument, "build_similarity: sigma must be > 0");
  }
  const std::size_t n = corr.size();
  if (n == 0) {
    throw Error(Error::Code::invalid_argument, "build_similarity: empty correspondences");
  }

  const double two_sigma_sq = 2.0 * params.sigma * params.sigma;
  double min_sq = corr.distance[0] * corr.distance[0];
  for (std::size_t i = 1; i < n; ++i) {
    min_sq = std::min(min_sq, corr.distance[i] * corr.distance[i]);
  }

  SimilarityMatrix m(n);
  std::size_t stored = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d_sq = corr.distance[i] * corr.distance[i];
    const double w = normalize ? std::exp(-(d_sq - min_sq) / two_sigma_sq)
                               : std::exp(-d_sq / two_sigma_sq);
    if (w == 0.0) continue;
    m.set_symmetric(i, corr.target_index[i], w);
    ++stored;
  }
  if (stored == 0) {
    throw Error(Error::Code::solver, "similarity collapse");
  }
  return m;
}

void write_heatmap_csv(const SimilarityMatrix& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error(Error::Code::io, "write_heatmap_csv: cannot open " + path);
  }
  out.precision(17);
  const std::size_t n = m.dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j) out << ',';
      out << m.at(i, j);
    }
    out << '\n';
  }
  if (!out) {
    throw Error(Error::Code::io, "write_heatmap_csv: write failed for " + path);
  }
}

void write_heatmap_pgm(const SimilarityMatrix& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error(Error::Code::io, "write_heatmap_pgm: cannot open " + path);
  }
  double max_w = 0.0;
  for (const auto& [key, w] : m.entries()) max_w = std::max(max_w, w);
  if (max_w <= 0.0) max_w = 1.0;

  const std::size_t n = m.dim();
  out << "P2\n" << n << ' ' << n << "\n255\n";
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j) out << ' ';
      out << static_cast<int>(std::lround(255.0 * m.at(i, j) / max_w));
    }
    out << '\n';
  }
  if (!out) {
    throw Error(Error::Code::io, "write_heatmap_pgm: write failed for " + path);
  }
}

}  // namespace esmicp
