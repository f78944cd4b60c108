/* C interface to the ESM-ICP registration library.
 *
 * All objects are opaque handles created and destroyed by the library.
 * Functions return ESMICP_OK on success; on failure they return a
 * status code and leave a human-readable message retrievable with
 * esmicp_last_error() (thread-local). Transforms cross the boundary as
 * row-major homogeneous 4x4 matrices (double[16]).
 */
#ifndef ESMICP_H
#define ESMICP_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum esmicp_status {
  ESMICP_OK = 0,
  ESMICP_ERROR_INVALID_ARGUMENT = 1,
  ESMICP_ERROR_IO = 2,
  ESMICP_ERROR_PARSE = 3,
  ESMICP_ERROR_SOLVER = 4
} esmicp_status;

typedef enum esmicp_mode {
  ESMICP_MODE_ESM = 0,
  ESMICP_MODE_CLASSIC = 1
} esmicp_mode;

typedef enum esmicp_covariance_form {
  ESMICP_COVARIANCE_MATRIX = 0,
  ESMICP_COVARIANCE_DIRECTED = 1
} esmicp_covariance_form;

typedef enum esmicp_termination {
  ESMICP_TERMINATED_ERROR = 0,      /* |E_k - E_{k-1}| below threshold */
  ESMICP_TERMINATED_TRANSFORM = 1,  /* incremental transform near identity */
  ESMICP_TERMINATED_MAX_ITERATIONS = 2
} esmicp_termination;

typedef struct esmicp_cloud esmicp_cloud;
typedef struct esmicp_result esmicp_result;

typedef struct esmicp_config {
  double sigma;
  int max_iterations;
  double eps_error;
  double eps_transform;
  int mode;             /* esmicp_mode */
  int covariance_form;  /* esmicp_covariance_form */
  int normalize_weights;
  int centroid_prealign;
  int record_snapshots;
} esmicp_config;

typedef struct esmicp_noise_component {
  double scale; /* standard deviation unless scale_is_variance */
  double clip_lo;
  double clip_hi;
} esmicp_noise_component;

typedef struct esmicp_noise_spec {
  double fraction; /* in [0, 1] */
  const esmicp_noise_component* components;
  size_t component_count;
  const double* mixture_weights; /* NULL = equal weights */
  uint64_t seed;
  int per_coordinate_component;
  int scale_is_variance;
} esmicp_noise_spec;

const char* esmicp_version(void);

/* Message from the most recent failing call on this thread. */
const char* esmicp_last_error(void);

void esmicp_config_defaults(esmicp_config* config);

/* The paper-style three-component clipped Gaussian mixture. The
 * components array must hold at least 3 entries; the spec is pointed at
 * it. */
void esmicp_noise_spec_defaults(esmicp_noise_spec* spec,
                                esmicp_noise_component components[3]);

/* ---- point clouds ---- */

/* xyz is a packed array of 3*count doubles. */
esmicp_status esmicp_cloud_create(const double* xyz, size_t count,
                                  esmicp_cloud** out);
/* format: "pcd", "off", "xyz", or NULL to infer from the extension. */
esmicp_status esmicp_cloud_load(const char* path, const char* format,
                                esmicp_cloud** out);
esmicp_status esmicp_cloud_save(const esmicp_cloud* cloud, const char* path,
                                const char* format);
size_t esmicp_cloud_size(const esmicp_cloud* cloud);
/* xyz_out must hold 3 * esmicp_cloud_size(cloud) doubles. */
esmicp_status esmicp_cloud_points(const esmicp_cloud* cloud, double* xyz_out);
esmicp_status esmicp_cloud_transform(const esmicp_cloud* cloud,
                                     const double transform[16],
                                     esmicp_cloud** out);
esmicp_status esmicp_cloud_downsample(const esmicp_cloud* cloud, double leaf,
                                      esmicp_cloud** out);
void esmicp_cloud_destroy(esmicp_cloud* cloud);

/* ---- synthetic experiments ---- */

/* Draws Euler angles (roll, pitch, yaw) uniformly per axis from
 * [rot_lo, rot_hi] and translations from [trans_lo, trans_hi]. */
esmicp_status esmicp_sample_transform(uint64_t seed, double rot_lo, double rot_hi,
                                      double trans_lo, double trans_hi,
                                      double transform_out[16]);

/* Displaces round(fraction * N) distinct points. indices_out (optional)
 * receives a malloc'd ascending list of corrupted indices to release
 * with esmicp_indices_destroy. */
esmicp_status esmicp_cloud_corrupt(const esmicp_cloud* cloud,
                                   const esmicp_noise_spec* spec,
                                   esmicp_cloud** out, size_t** indices_out,
                                   size_t* index_count_out);
void esmicp_indices_destroy(size_t* indices);

/* ---- registration ---- */

esmicp_status esmicp_register(const esmicp_cloud* source,
                              const esmicp_cloud* target,
                              const esmicp_config* config, esmicp_result** out);
esmicp_status esmicp_result_transform(const esmicp_result* result,
                                      double transform_out[16]);
size_t esmicp_result_iterations(const esmicp_result* result);
int esmicp_result_termination(const esmicp_result* result);
/* k is 0-based into the trace. */
esmicp_status esmicp_result_record(const esmicp_result* result, size_t k,
                                   double* error_out, double incremental_out[16],
                                   double accumulated_out[16]);
esmicp_status esmicp_result_write_trace_csv(const esmicp_result* result,
                                            const char* path);
/* Writes m_iter_<k>.csv and m_iter_<k>.pgm per recorded iteration; the
 * registration must have run with record_snapshots set. */
esmicp_status esmicp_result_write_snapshots(const esmicp_result* result,
                                            const char* directory);
void esmicp_result_destroy(esmicp_result* result);

/* ---- error metrics ---- */

esmicp_status esmicp_rotation_error(const double estimated[16],
                                    const double ground_truth[16], double* mse,
                                    double* rmse, double* mae);
esmicp_status esmicp_translation_error(const double estimated[16],
                                       const double ground_truth[16], double* mse,
                                       double* rmse, double* mae);
esmicp_status esmicp_correspondence_rmse(const esmicp_cloud* source,
                                         const esmicp_cloud* target,
                                         const double transform[16],
                                         double* rmse);

/* ---- transform helpers ---- */

esmicp_status esmicp_euler_to_transform(double roll, double pitch, double yaw,
                                        double tx, double ty, double tz,
                                        double transform_out[16]);
esmicp_status esmicp_transform_to_euler(const double transform[16], double* roll,
                                        double* pitch, double* yaw);
esmicp_status esmicp_invert_transform(const double transform[16],
                                      double transform_out[16]);
esmicp_status esmicp_compose_transforms(const double applied_second[16],
                                        const double applied_first[16],
                                        double transform_out[16]);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* ESMICP_H */
