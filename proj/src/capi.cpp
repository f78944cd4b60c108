#include "esmicp.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <string>

#include "esmicp/cloud_io.hpp"
#include "esmicp/geometry.hpp"
#include "esmicp/metrics.hpp"
#include "esmicp/solver.hpp"
#include "esmicp/synth.hpp"

struct esmicp_cloud {
  esmicp::PointCloud points;
};

struct esmicp_result {
  esmicp::RegistrationResult inner;
};

namespace {

thread_local std::string g_last_error;

esmicp_status status_from_code(esmicp::Error::Code code) {
  switch (code) {
    case esmicp::Error::Code::io: return ESMICP_ERROR_IO;
    case esmicp::Error::Code::parse: return ESMICP_ERROR_PARSE;
    case esmicp::Error::Code::solver: return ESMICP_ERROR_SOLVER;
    default: return ESMICP_ERROR_INVALID_ARGUMENT;
  }
}

esmicp_status fail(esmicp_status status, const char* message) {
  g_last_error = message;
  return status;
}

template <typename Fn>
esmicp_status guarded(Fn&& fn) {
  try {
    fn();
    return ESMICP_OK;
  } catch (const esmicp::Error& e) {
    g_last_error = e.what();
    return status_from_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return ESMICP_ERROR_INVALID_ARGUMENT;
  }
}

esmicp::RigidTransform transform_from(const double m[16]) {
  return esmicp::RigidTransform::from_homogeneous(m);
}

void transform_to(const esmicp::RigidTransform& t, double out[16]) {
  const auto h = t.homogeneous();
  std::memcpy(out, h.data(), sizeof(double) * 16);
}

}  // namespace

extern "C" {

const char* esmicp_version(void) { return "1.0.0"; }

const char* esmicp_last_error(void) { return g_last_error.c_str(); }

void esmicp_config_defaults(esmicp_config* config) {
  if (!config) return;
  const esmicp::SolverConfig d;
  config->sigma = d.sigma;
  config->max_iterations = d.max_iterations;
  config->eps_error = d.epsilon_error;
  config->eps_transform = d.epsilon_transform;
  config->mode = ESMICP_MODE_ESM;
  config->covariance_form = ESMICP_COVARIANCE_MATRIX;
  config->normalize_weights = 1;
  config->centroid_prealign = 1;
  config->record_snapshots = 0;
}

void esmicp_noise_spec_defaults(esmicp_noise_spec* spec,
                                esmicp_noise_component components[3]) {
  if (!spec || !components) return;
  const esmicp::NoiseSpec d = esmicp::NoiseSpec::paper_mixture(0.3, 0);
  for (int i = 0; i < 3; ++i) {
    components[i].scale = d.components[static_cast<std::size_t>(i)].scale;
    components[i].clip_lo = d.components[static_cast<std::size_t>(i)].clip_lo;
    components[i].clip_hi = d.components[static_cast<std::size_t>(i)].clip_hi;
  }
  spec->fraction = d.fraction;
  spec->components = components;
  spec->component_count = 3;
  spec->mixture_weights = nullptr;
  spec->seed = 0;
  spec->per_coordinate_component = 0;
  spec->scale_is_variance = 0;
}

esmicp_status esmicp_cloud_create(const double* xyz, size_t count,
                                  esmicp_cloud** out) {
  if (!out || (!xyz && count > 0)) {
    return fail(ESMICP_ERROR_INVALID_ARGUMENT, "cloud_create: null argument");
  }
  return guarded([&] {
    auto cloud = std::make_unique<esmicp_cloud>();
    cloud->points.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      esmicp::Vec3 p{xyz[3 * i], xyz[3 * i + 1], xyz[3 * i + 2]};
      if (!p.finite()) {
        throw esmicp::Error(esmicp::Error::Code::invalid_argument,
                            "cloud_create: non-finite coordinate");
      }
      cloud->points.push_back(p);
    }
    *out = cloud.release();
  });
}

esmicp_status esmicp_cloud_load(const char* path, const char* format,
                                esmicp_cloud** out) {
  if (!path || !out) {
    return fail(ESMICP_ERROR_INVALID_ARGUMENT, "cloud_load: null argument");
  }
  return guarded([&] {
    auto cloud = std::make_unique<esmicp_cloud>();
    cloud->points = format ? esmicp::read_cloud(path, esmicp::format_from_name(format))
                           : esmicp::read_cloud(path);
    *out = cloud.release();
  });
}

esmicp_status esmicp_cloud_save(const esmicp_cloud* cloud, const char* path,
                                const char* format) {
  if (!cloud || !path) {
    return fail(ESMICP_ERROR_INVALID_ARGUMENT, "cloud_save: null argument");
  }
  return guarded([&] {
    if (format) {
      esmicp::write_cloud(cloud->points, path, esmicp::format_from_name(format));
    } else {
      esmicp::write_cloud(cloud->points, path);
    }
  });
}

size_t esmicp_cloud_size(const esmicp_cloud* cloud) {
  return cloud ? cloud->points.size() : 0;
}

esmicp_status esmicp_cloud_points(const esmicp_cloud* cloud, double* xyz_out) {
  if (!cloud || !xyz_out) {
    return fail(ESMICP_ERROR_INVALID_ARGUMENT, "cloud_points: null argument");
  }
  for (size_t i = 0; i < cloud->points.size(); ++i) {
    xyz_out[3 * i] = cloud->points[i].x;
    xyz_out[3 * i + 1] = cloud->points[i].y;
    xyz_out[3 * i + 2] = cloud->points[i].z;
  }
  return ESMICP_OK;
}

esmicp_status esmicp_cloud_transform(const esmicp_cloud* cloud,
                                     const double transform[16],
                                     esmicp_cloud** out) {
  if (!cloud || !transform || !out) {
    return fail(ESMICP_ERROR_INVALID_ARGUMENT, "cloud_transform: null argument");
  }
  return guarded([&] {
    auto result = std::make_unique<esmicp_cloud>();
    result->points = esmicp::apply_transform(cloud->points, transform_from(transform));
    *out = result.release();
  });
}

esmicp_status esmicp_cloud_downsample(const esmicp_cloud* cloud, double leaf,
                                      esmicp_cloud** out) {
  if (!cloud || !out) {
    return fail(ESMICP_ERROR_INVALID_ARGUMENT, "cloud_downsample: null argument");
  }
  return guarded([&] {
    auto result = std::make_unique<esmicp_cloud>();
    result->points = esmicp::voxel_downsample(cloud->points, {leaf});
    *out = result.release();
  });
}

void esmicp_cloud_destroy(esmicp_cloud* cloud) { delete cloud; }

esmicp_status esmicp_sample_transform(uint64_t seed, double rot_lo, double rot_hi,
                                      double trans_lo, double trans_hi,
                                      double transform_out[16]) {
  if (!transform_out) {
    return fail(ESMICP_ERROR_INVALID_ARGUMENT, "sample_transform: null output");
  }
  return guarded([&] {
    esmicp::TransformSampler sampler;
    sampler.rotation_lo = rot_lo;
    sampler.rotation_hi = rot_hi;
    sampler.translation_lo = trans_lo;
    sampler.translation_hi = trans_hi;
    sampler.seed = seed;
    transform_to(esmicp::sample_transform(sampler), transform_out);
  });
}

esmicp_status esmicp_cloud_corrupt(const esmicp_cloud* cloud,
                                   const esmicp_noise_spec* spec,
                                   esmicp_cloud** out, size_t** indices_out,
                                   size_t* index_count_out) {
  if (!cloud || !spec || !out) {
    return fail(ESMICP_ERROR_INVALID_ARGUMENT, "cloud_corrupt: null argument");
  }
  return guarded([&] {
    esmicp::NoiseSpec inner;
    inner.fraction = spec->fraction;
    for (size_t i = 0; i < spec->component_count; ++i) {
      inner.components.push_back({spec->components[i].scale,
                                  spec->components[i].clip_lo,
                                  spec->components[i].clip_hi});
    }
    if (spec->mixture_weights) {
      inner.mixture_weights.assign(spec->mixture_weights,
                                   spec->mixture_weights + spec->component_count);
    }
    inner.seed = spec->seed;
    inner.per_coordinate_component = spec->per_coordinate_component != 0;
    inner.scale_is_variance = spec->scale_is_variance != 0;

    esmicp::CorruptionResult corrupted = esmicp::corrupt(cloud->points, inner);
    auto result = std::make_unique<esmicp_cloud>();
    result->points = std::move(corrupted.cloud);
    if (indices_out && index_count_out) {
      const size_t n = corrupted.corrupted_indices.size();
      auto* buffer = static_cast<size_t*>(std::malloc(sizeof(size_t) * std::max(n, size_t{1})));
      if (!buffer) {
        throw esmicp::Error(esmicp::Error::Code::io, "cloud_corrupt: allocation failed");
      }
      std::memcpy(buffer, corrupted.corrupted_indices.data(), sizeof(size_t) * n);
      *indices_out = buffer;
      *index_count_out = n;
    }
    *out = result.release();
  });
}

void esmicp_indices_destroy(size_t* indices) { std::free(indices); }

esmicp_status esmicp_register(const esmicp_cloud* source,
                              const esmicp_cloud* target,
                              const esmicp_config* config, esmicp_result** out) {
  if (!source || !target || !config || !out) {
    return fail(ESMICP_ERROR_INVALID_ARGUMENT, "register: null argument");
  }
  return guarded([&] {
    esmicp::SolverConfig inner;
    inner.sigma = config->sigma;
    inner.max_iterations = config->max_iterations;
    inner.epsilon_error = config->eps_error;
    inner.epsilon_transform = config->eps_transform;
    inner.mode = config->mode == ESMICP_MODE_CLASSIC ? esmicp::SolverMode::classic
                                                     : esmicp::SolverMode::esm;
    inner.covariance_form = config->covariance_form == ESMICP_COVARIANCE_DIRECTED
                                ? esmicp::CovarianceForm::directed
                                : esmicp::CovarianceForm::matrix;
    inner.normalize_weights = config->normalize_weights != 0;
    inner.centroid_prealign = config->centroid_prealign != 0;
    inner.record_snapshots = config->record_snapshots != 0;

    auto result = std::make_unique<esmicp_result>();
    result->inner = esmicp::register_clouds(source->points, target->points, inner);
    *out = result.release();
  });
}

esmicp_status esmicp_result_transform(const esmicp_result* result,
                                      double transform_out[16]) {
  if (!result || !transform_out) {
    return fail(ESMICP_ERROR_INVALID_ARGUMENT, "result_transform: null argument");
  }
  transform_to(result->inner.final_transform, transform_out);
  return ESMICP_OK;
}

size_t esmicp_result_iterations(const esmicp_result* result) {
  return result ? result->inner.trace.size() : 0;
}

int esmicp_result_termination(const esmicp_result* result) {
  if (!result) return ESMICP_TERMINATED_MAX_ITERATIONS;
  switch (result->inner.termination) {
    case esmicp::Termination::converged_error: return ESMICP_TERMINATED_ERROR;
    case esmicp::Termination::converged_transform: return ESMICP_TERMINATED_TRANSFORM;
    default: return ESMICP_TERMINATED_MAX_ITERATIONS;
  }
}

esmicp_status esmicp_result_record(const esmicp_result* result, size_t k,
                                   double* error_out, double incremental_out[16],
                                   double accumulated_out[16]) {
  if (!result) {
    return fail(ESMICP_ERROR_INVALID_ARGUMENT, "result_record: null result");
  }
  if (k >= result->inner.trace.size()) {
    return fail(ESMICP_ERROR_INVALID_ARGUMENT, "result_record: iteration out of range");
  }
  const esmicp::IterationRecord& rec = result->inner.trace[k];
  if (error_out) *error_out = rec.error;
  if (incremental_out) transform_to(rec.incremental, incremental_out);
  if (accumulated_out) transform_to(rec.accumulated, accumulated_out);
  return ESMICP_OK;
}

esmicp_status esmicp_result_write_trace_csv(const esmicp_result* result,
                                            const char* path) {
  if (!result || !path) {
    return fail(ESMICP_ERROR_INVALID_ARGUMENT, "write_trace_csv: null argument");
  }
  return guarded([&] { esmicp::write_trace_csv(result->inner, path); });
}

esmicp_status esmicp_result_write_snapshots(const esmicp_result* result,
                                            const char* directory) {
  if (!result || !directory) {
    return fail(ESMICP_ERROR_INVALID_ARGUMENT, "write_snapshots: null argument");
  }
  return guarded([&] {
    bool wrote_any = false;
    for (const esmicp::IterationRecord& rec : result->inner.trace) {
      if (!rec.similarity) continue;
      const std::string stem =
          std::string(directory) + "/m_iter_" + std::to_string(rec.iteration);
      esmicp::write_heatmap_csv(*rec.similarity, stem + ".csv");
      esmicp::write_heatmap_pgm(*rec.similarity, stem + ".pgm");
      wrote_any = true;
    }
    if (!wrote_any) {
      throw esmicp::Error(esmicp::Error::Code::invalid_argument,
                          "write_snapshots: no snapshots recorded (set record_snapshots)");
    }
  });
}

void esmicp_result_destroy(esmicp_result* result) { delete result; }

esmicp_status esmicp_rotation_error(const double estimated[16],
                                    const double ground_truth[16], double* mse,
                                    double* rmse, double* mae) {
  if (!estimated || !ground_truth) {
    return fail(ESMICP_ERROR_INVALID_ARGUMENT, "rotation_error: null argument");
  }
  return guarded([&] {
    const esmicp::MetricTriple t = esmicp::rotation_error(
        transform_from(estimated).rotation, transform_from(ground_truth).rotation);
    if (mse) *mse = t.mse;
    if (rmse) *rmse = t.rmse;
    if (mae) *mae = t.mae;
  });
}

esmicp_status esmicp_translation_error(const double estimated[16],
                                       const double ground_truth[16], double* mse,
                                       double* rmse, double* mae) {
  if (!estimated || !ground_truth) {
    return fail(ESMICP_ERROR_INVALID_ARGUMENT, "translation_error: null argument");
  }
  return guarded([&] {
    const esmicp::MetricTriple t = esmicp::translation_error(
        transform_from(estimated).translation, transform_from(ground_truth).translation);
    if (mse) *mse = t.mse;
    if (rmse) *rmse = t.rmse;
    if (mae) *mae = t.mae;
  });
}

esmicp_status esmicp_correspondence_rmse(const esmicp_cloud* source,
                                         const esmicp_cloud* target,
                                         const double transform[16],
                                         double* rmse) {
  if (!source || !target || !transform || !rmse) {
    return fail(ESMICP_ERROR_INVALID_ARGUMENT, "correspondence_rmse: null argument");
  }
  return guarded([&] {
    *rmse = esmicp::correspondence_rmse(source->points, target->points,
                                        transform_from(transform));
  });
}

esmicp_status esmicp_euler_to_transform(double roll, double pitch, double yaw,
                                        double tx, double ty, double tz,
                                        double transform_out[16]) {
  if (!transform_out) {
    return fail(ESMICP_ERROR_INVALID_ARGUMENT, "euler_to_transform: null output");
  }
  return guarded([&] {
    esmicp::RigidTransform t;
    t.rotation = esmicp::euler_to_rotation({roll, pitch, yaw});
    t.translation = {tx, ty, tz};
    transform_to(t, transform_out);
  });
}

esmicp_status esmicp_transform_to_euler(const double transform[16], double* roll,
                                        double* pitch, double* yaw) {
  if (!transform) {
    return fail(ESMICP_ERROR_INVALID_ARGUMENT, "transform_to_euler: null argument");
  }
  return guarded([&] {
    const esmicp::EulerAngles e =
        esmicp::rotation_to_euler(transform_from(transform).rotation);
    if (roll) *roll = e.roll;
    if (pitch) *pitch = e.pitch;
    if (yaw) *yaw = e.yaw;
  });
}

esmicp_status esmicp_invert_transform(const double transform[16],
                                      double transform_out[16]) {
  if (!transform || !transform_out) {
    return fail(ESMICP_ERROR_INVALID_ARGUMENT, "invert_transform: null argument");
  }
  return guarded([&] {
    transform_to(esmicp::invert(transform_from(transform)), transform_out);
  });
}

esmicp_status esmicp_compose_transforms(const double applied_second[16],
                                        const double applied_first[16],
                                        double transform_out[16]) {
  if (!applied_second || !applied_first || !transform_out) {
    return fail(ESMICP_ERROR_INVALID_ARGUMENT, "compose_transforms: null argument");
  }
  return guarded([&] {
    transform_to(esmicp::compose(transform_from(applied_second),
                                 transform_from(applied_first)),
                 transform_out);
  });
}

}  // extern "C"
