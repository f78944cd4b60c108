#include "esmicp/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace esmicp {

std::size_t SampleStream::uniform_index(std::size_t lo, std::size_t hi_inclusive) {
  const std::size_t span = hi_inclusive - lo + 1;
  // Rejection-free is unnecessary here; the bias at 53 bits is negligible
  // for cloud-sized ranges, but keep draws deterministic and simple.
  const std::size_t offset =
      std::min(span - 1, static_cast<std::size_t>(uniform01() * static_cast<double>(span)));
  return lo + offset;
}

double SampleStream::normal(double stddev) {
  if (has_spare_) {
    has_spare_ = false;
    return spare_ * stddev;
  }
  double u1 = uniform01();
  while (u1 == 0.0) u1 = uniform01();
  const double u2 = uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * M_PI * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle) * stddev;
}

TransformStream::TransformStream(const TransformSampler& sampler)
    : params_(sampler), stream_(sampler.seed) {
  if (params_.rotation_lo > params_.rotation_hi ||
      params_.translation_lo > params_.translation_hi) {
    throw Error(Error::Code::invalid_argument, "sample_transform: range lo > hi");
  }
}

RigidTransform TransformStream::sample() {
  EulerAngles e;
  e.roll = stream_.uniform(params_.rotation_lo, params_.rotation_hi);
  e.pitch = stream_.uniform(params_.rotation_lo, params_.rotation_hi);
  e.yaw = stream_.uniform(params_.rotation_lo, params_.rotation_hi);
  RigidTransform t;
  t.rotation = euler_to_rotation(e);
  t.translation.x = stream_.uniform(params_.translation_lo, params_.translation_hi);
  t.translation.y = stream_.uniform(params_.translation_lo, params_.translation_hi);
  t.translation.z = stream_.uniform(params_.translation_lo, params_.translation_hi);
  return t;
}

RigidTransform sample_transform(const TransformSampler& sampler) {
  TransformStream stream(sampler);
  return stream.sample();
}

NoiseSpec NoiseSpec::paper_mixture(double fraction, std::uint64_t seed) {
  NoiseSpec spec;
  spec.fraction = fraction;
  spec.components = {{0.01, -0.05, 0.05}, {0.04, -1.0, 1.0}, {0.1, -10.0, 10.0}};
  spec.seed = seed;
  return spec;
}

CorruptionResult corrupt(const PointCloud& cloud, const NoiseSpec& spec) {
  if (spec.fraction < 0.0 || spec.fraction > 1.0) {
    throw Error(Error::Code::invalid_argument, "corrupt: fraction outside [0, 1]");
  }
  if (spec.components.empty()) {
    throw Error(Error::Code::invalid_argument, "corrupt: no mixture components");
  }
  for (const NoiseComponent& c : spec.components) {
    if (c.clip_lo > c.clip_hi) {
      throw Error(Error::Code::invalid_argument, "corrupt: clip lo > hi");
    }
  }
  std::vector<double> weights = spec.mixture_weights;
  if (weights.empty()) {
    weights.assign(spec.components.size(), 1.0 / static_cast<double>(spec.components.size()));
  }
  if (weights.size() != spec.components.size()) {
    throw Error(Error::Code::invalid_argument,
                "corrupt: mixture weight count differs from component count");
  }
  double weight_sum = 0.0;
  for (double w : weights) {
    if (w <= 0.0) {
      throw Error(Error::Code::invalid_argument, "corrupt: mixture weights must be > 0");
    }
    weight_sum += w;
  }

  const std::size_t n = cloud.size();
  const auto count = static_cast<std::size_t>(
      std::llround(spec.fraction * static_cast<double>(n)));

  CorruptionResult result;
  result.cloud = cloud;
  if (count == 0) return result;

  SampleStream stream(spec.seed);

  // Partial Fisher-Yates for distinct indices, then ascending order.
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = stream.uniform_index(i, n - 1);
    std::swap(pool[i], pool[j]);
  }
  result.corrupted_indices.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(count));
  std::sort(result.corrupted_indices.begin(), result.corrupted_indices.end());

  auto pick_component = [&]() {
    const double r = stream.uniform01() * weight_sum;
    double cum = 0.0;
    for (std::size_t m = 0; m < weights.size(); ++m) {
      cum += weights[m];
      if (r < cum) return m;
    }
    return weights.size() - 1;
  };

  auto displacement = [&](std::size_t m) {
    const NoiseComponent& c = spec.components[m];
    const double stddev = spec.scale_is_variance ? std::sqrt(c.scale) : c.scale;
    return std::clamp(stream.normal(stddev), c.clip_lo, c.clip_hi);
  };

  for (std::size_t idx : result.corrupted_indices) {
    Vec3& p = result.cloud[idx];
    if (spec.per_coordinate_component) {
      p.x += displacement(pick_component());
      p.y += displacement(pick_component());
      p.z += displacement(pick_component());
    } else {
      const std::size_t m = pick_component();
      p.x += displacement(m);
      p.y += displacement(m);
      p.z += displacement(m);
    }
  }
  return result;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  // splitmix64 on master + golden-ratio-stepped index.
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace esmicp
