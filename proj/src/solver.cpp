#include "esmicp/solver.hpp"

#include <cmath>
#include <fstream>

namespace esmicp {

double weighted_error(const PointCloud& source, const PointCloud& target,
                      const Correspondences& corr, std::span<const double> weights,
                      const RigidTransform& transform) {
  if (corr.size() != source.size() || weights.size() != source.size()) {
    throw Error(Error::Code::invalid_argument,
                "weighted_error: sizes of source, correspondences and weights differ");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < source.size(); ++i) {
    const Vec3 residual = transform.apply(source[i]) - target[corr.target_index[i]];
    sum += weights[i] * residual.squared_norm();
  }
  return sum;
}

StepResult esm_icp_step(const PointCloud& source_current, const PointCloud& target,
                        const KdTree& index, const SolverConfig& config) {
  const std::size_t n = source_current.size();
  if (n == 0 || target.empty()) {
    throw Error(Error::Code::invalid_argument, "esm_icp_step: empty cloud");
  }
  if (config.mode == SolverMode::esm && n != target.size()) {
    throw Error(Error::Code::invalid_argument,
                "esm_icp_step: source and target sizes differ in esm mode");
  }

  const Correspondences corr = find_correspondences(source_current, index);

  // Kernel weights of this pass; classic ICP weighs every pair equally.
  std::vector<double> weights(n, 1.0);
  SimilarityMatrix similarity(n);
  if (config.mode == SolverMode::esm) {
    const KernelParams kernel{config.sigma};
    for (std::size_t i = 0; i < n; ++i) {
      weights[i] = gaussian_weight(corr.distance[i], kernel);
    }
    similarity = build_similarity(corr, kernel, config.normalize_weights);
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      similarity.set_symmetric(i, corr.target_index[i], 1.0);
    }
  }

  const Vec3 s_bar = centroid(source_current);
  const Vec3 t_bar = centroid(target);

  Mat3 h = Mat3::zero();
  if (config.mode == SolverMode::esm &&
      config.covariance_form == CovarianceForm::matrix) {
    for (const auto& [key, w] : similarity.entries()) {
      add_outer(h, (source_current[key.first] - s_bar) * w,
                target[key.second] - t_bar);
    }
  } else if (config.mode == SolverMode::esm) {
    const bool normalize = config.normalize_weights;
    double min_sq = corr.distance[0] * corr.distance[0];
    for (std::size_t i = 1; i < n; ++i) {
      min_sq = std::min(min_sq, corr.distance[i] * corr.distance[i]);
    }
    const double two_sigma_sq = 2.0 * config.sigma * config.sigma;
    for (std::size_t i = 0; i < n; ++i) {
      const double d_sq = corr.distance[i] * corr.distance[i];
      const double w = normalize ? std::exp(-(d_sq - min_sq) / two_sigma_sq)
                                 : weights[i];
      add_outer(h, (source_current[i] - s_bar) * w,
                target[corr.target_index[i]] - t_bar);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      add_outer(h, source_current[i] - s_bar, target[corr.target_index[i]] - t_bar);
    }
  }

  StepResult step{procrustes(h, s_bar, t_bar), 0.0, std::move(similarity)};
  step.error = weighted_error(source_current, target, corr, weights, step.transform);
  return step;
}

RegistrationResult register_clouds(const PointCloud& source, const PointCloud& target,
                                   const SolverConfig& config) {
  if (source.empty() || target.empty()) {
    throw Error(Error::Code::invalid_argument, "register: empty cloud");
  }
  if (config.max_iterations < 1) {
    throw Error(Error::Code::invalid_argument, "register: max_iterations must be >= 1");
  }
  if (config.mode == SolverMode::esm && source.size() != target.size()) {
    throw Error(Error::Code::invalid_argument,
                "register: source and target sizes differ in esm mode");
  }

  const KdTree index(target);

  RigidTransform accumulated = RigidTransform::identity();
  PointCloud working = source;
  if (config.centroid_prealign) {
    accumulated.translation = centroid(target) - centroid(source);
    working = apply_transform(source, accumulated);
  }

  RegistrationResult result;
  result.trace.reserve(static_cast<std::size_t>(config.max_iterations));
  double previous_error = 0.0;

  for (int k = 1; k <= config.max_iterations; ++k) {
    StepResult step = esm_icp_step(working, target, index, config);

    working = apply_transform(working, step.transform);
    accumulated = compose(step.transform, accumulated);

    IterationRecord record;
    record.iteration = k;
    record.error = step.error;
    record.incremental = step.transform;
    record.accumulated = accumulated;
    if (config.record_snapshots) record.similarity = std::move(step.similarity);
    result.trace.push_back(std::move(record));

    if (step.transform.deviation_from_identity() < config.epsilon_transform) {
      result.termination = Termination::converged_transform;
      break;
    }
    if (k > 1 && std::abs(step.error - previous_error) < config.epsilon_error) {
      result.termination = Termination::converged_error;
      break;
    }
    previous_error = step.error;
    if (k == config.max_iterations) {
      result.termination = Termination::max_iterations;
    }
  }

  result.final_transform = accumulated;
  return result;
}

const char* termination_name(Termination t) {
  switch (t) {
    case Termination::converged_error: return "converged_error";
    case Termination::converged_transform: return "converged_transform";
    default: return "max_iterations";
  }
}

void write_trace_csv(const RegistrationResult& result, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error(Error::Code::io, "write_trace_csv: cannot open " + path);
  }
  out.precision(17);
  for (const IterationRecord& rec : result.trace) {
    out << rec.iteration << ',' << rec.error;
    for (double v : rec.incremental.homogeneous()) out << ',' << v;
    out << '\n';
  }
  if (!out) {
    throw Error(Error::Code::io, "write_trace_csv: write failed for " + path);
  }
}

}  // namespace esmicp
