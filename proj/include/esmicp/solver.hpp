#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "esmicp/kdtree.hpp"
#include "esmicp/linalg.hpp"
#include "esmicp/similarity.hpp"

namespace esmicp {

enum class SolverMode { esm, classic };

// How the similarity entries enter the cross-covariance:
//   matrix:   H = sum over stored M(i,j) of w * (s_i - s_bar)(t_j - t_bar)^T
//   directed: H = sum_i w_i * (s_i - s_bar)(t_c(i) - t_bar)^T
enum class CovarianceForm { matrix, directed };

enum class Termination { converged_error, converged_transform, max_iterations };

struct SolverConfig {
  double sigma = 0.1;
  int max_iterations = 100;
  double epsilon_error = 1e-12;      // on |E_k - E_{k-1}|
  double epsilon_transform = 1e-10;  // on max-norm of incremental minus identity
  SolverMode mode = SolverMode::esm;
  CovarianceForm covariance_form = CovarianceForm::matrix;
  bool normalize_weights = true;
  bool centroid_prealign = true;
  bool record_snapshots = false;
};

struct IterationRecord {
  int iteration = 0;   // 1-based
  double error = 0.0;  // E_k, kernel-weighted squared residuals
  RigidTransform incremental;
  RigidTransform accumulated;  // source -> target map after this iteration
  std::optional<SimilarityMatrix> similarity;
};

struct RegistrationResult {
  RigidTransform final_transform;
  std::vector<IterationRecord> trace;
  Termination termination = Termination::max_iterations;

  int iterations() const { return static_cast<int>(trace.size()); }
};

struct StepResult {
  RigidTransform transform;  // incremental
  double error = 0.0;        // E_k at this transform
  SimilarityMatrix similarity;
};

// sum_i weights[i] * || R s_i + tau - t_c(i) ||^2
double weighted_error(const PointCloud& source, const PointCloud& target,
                      const Correspondences& corr, std::span<const double> weights,
                      const RigidTransform& transform);

// One full pass: correspondences, similarity matrix, centroids (plain
// means per the construction), weighted cross-covariance, SVD, transform.
// The returned error uses the kernel weights of this pass evaluated at
// the returned transform. Classic mode pairs each source point with its
// nearest neighbor at unit weight.
StepResult esm_icp_step(const PointCloud& source_current, const PointCloud& target,
                        const KdTree& index, const SolverConfig& config);

// Full registration loop. Applies each incremental transform to a
// working copy of the source and composes it into the final transform;
// with centroid_prealign the source is first shifted onto the target
// centroid and the shift is folded into the result.
RegistrationResult register_clouds(const PointCloud& source, const PointCloud& target,
                                   const SolverConfig& config);

const char* termination_name(Termination t);

// One line per iteration: iteration, E_k, then the 16 row-major entries
// of the incremental homogeneous transform.
void write_trace_csv(const RegistrationResult& result, const std::string& path);

}  // namespace esmicp
