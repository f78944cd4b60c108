#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>

#include "esmicp/kdtree.hpp"

namespace esmicp {

struct KernelParams {
  double sigma = 0.1;  // model units, > 0
};

// Eq-style kernel weight exp(-d^2 / (2 sigma^2)); 1 at d = 0.
double gaussian_weight(double distance, const KernelParams& params);

// Sparse symmetric N x N weight matrix: each correspondence (i, c(i))
// stores its weight at (i, c(i)) and (c(i), i). At most 2N entries.
class SimilarityMatrix {
 public:
  using Key = std::pair<std::size_t, std::size_t>;
  using EntryMap = std::map<Key, double>;

  explicit SimilarityMatrix(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t stored_count() const { return entries_.size(); }
  const EntryMap& entries() const { return entries_; }

  // Stores (i, j) and (j, i); later writes overwrite earlier ones.
  void set_symmetric(std::size_t i, std::size_t j, double weight) {
    entries_[{i, j}] = weight;
    entries_[{j, i}] = weight;
  }

  double at(std::size_t i, std::size_t j) const {
    auto it = entries_.find({i, j});
    return it == entries_.end() ? 0.0 : it->second;
  }

 private:
  std::size_t dim_;
  EntryMap entries_;
};

// Builds M from scratch per the kernel. With normalize set, weights are
// rescaled so the best correspondence gets exactly 1 (computed as
// exp(-(d_i^2 - d_min^2) / 2 sigma^2), which stays finite at any
// misalignment scale). Entries that underflow to exactly 0 are not
// stored; when every raw weight underflows and normalize is unset the
// call fails with "similarity collapse".
SimilarityMatrix build_similarity(const Correspondences& corr,
                                  const KernelParams& params, bool normalize);

// Dense row-major CSV, one row per line.
void write_heatmap_csv(const SimilarityMatrix& m, const std::string& path);

// Plain P2 graymap, maxval 255, value = round(255 * w / max_w).
void write_heatmap_pgm(const SimilarityMatrix& m, const std::string& path);

}  // namespace esmicp
