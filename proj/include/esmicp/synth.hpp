#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "esmicp/geometry.hpp"

namespace esmicp {

// Deterministic draw stream: uniforms from the top 53 bits of a
// mt19937_64 output, normals via Box-Muller. Not thread-safe; one
// stream per thread.
class SampleStream {
 public:
  explicit SampleStream(std::uint64_t seed) : engine_(seed) {}

  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  std::size_t uniform_index(std::size_t lo, std::size_t hi_inclusive);
  double normal(double stddev);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

struct TransformSampler {
  double rotation_lo = -M_PI;  // radians, per Euler axis
  double rotation_hi = M_PI;
  double translation_lo = -1.0;
  double translation_hi = 1.0;
  std::uint64_t seed = 0;
};

class TransformStream {
 public:
  explicit TransformStream(const TransformSampler& sampler);

  // Draw order: roll, pitch, yaw, then tx, ty, tz.
  RigidTransform sample();

 private:
  TransformSampler params_;
  SampleStream stream_;
};

RigidTransform sample_transform(const TransformSampler& sampler);

struct NoiseComponent {
  double scale = 0.1;  // standard deviation unless scale_is_variance
  double clip_lo = -10.0;
  double clip_hi = 10.0;
};

struct NoiseSpec {
  double fraction = 0.3;  // in [0, 1]
  std::vector<NoiseComponent> components;
  std::vector<double> mixture_weights;  // empty = equal weights
  std::uint64_t seed = 0;
  bool per_coordinate_component = false;  // redraw the component per coordinate
  bool scale_is_variance = false;

  // The paper's three-component clipped mixture.
  static NoiseSpec paper_mixture(double fraction, std::uint64_t seed);
};

struct CorruptionResult {
  PointCloud cloud;
  std::vector<std::size_t> corrupted_indices;  // ascending
};

// Displaces round(fraction * N) distinct points by clipped Gaussian
// draws; untouched points are bit-identical to the input.
CorruptionResult corrupt(const PointCloud& cloud, const NoiseSpec& spec);

// Fixed 64-bit mixer for deriving per-trial seeds from a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace esmicp
