/* SPDX-License-Identifier: Apache-2.0 */
/* C interface of the edgefem library. Objects are opaque handles owned by the
 * caller and released with the matching *_destroy function. Every call that
 * can fail returns an efem_status; efem_last_error() then describes the
 * failure for the calling thread. */
#ifndef EDGEFEM_H
#define EDGEFEM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define EFEM_API __declspec(dllexport)
#else
#define EFEM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum efem_status {
  EFEM_OK = 0,
  EFEM_ERR_ARGUMENT = 1,
  EFEM_ERR_CONSTRUCTION = 2,
  EFEM_ERR_CONVERGENCE = 3,
  EFEM_ERR_IO = 4,
  EFEM_ERR_INTERNAL = 5
} efem_status;

typedef struct efem_element efem_element;
typedef struct efem_mesh efem_mesh;
typedef struct efem_result efem_result;

EFEM_API const char* efem_version(void);
EFEM_API const char* efem_last_error(void);
EFEM_API const char* efem_status_name(efem_status status);

/* Reference elements. kind: "cube2", "cube3", "simplex2", "simplex3"
 * (aliases "quad", "hex", "tri", "tet"). */
EFEM_API efem_status efem_element_create(const char* kind, int order, efem_element** out);
EFEM_API void efem_element_destroy(efem_element* element);
EFEM_API int efem_element_num_dofs(const efem_element* element);
EFEM_API int efem_element_dim(const efem_element* element);
/* values and curls hold num_dofs * 3 doubles (row per shape function);
 * curls may be NULL. */
EFEM_API efem_status efem_element_eval(const efem_element* element, const double point[3],
                                       double* values, double* curls);
/* Row-major num_dofs x num_dofs matrix of moments applied to the pre-basis. */
EFEM_API efem_status efem_element_moment_matrix(const efem_element* element, double* out);
EFEM_API efem_status efem_element_write_csv(const efem_element* element, const char* path,
                                            int samples);

/* Structured mesh of [0,1]^d with n cells per axis; "simplex" kinds split
 * every box. */
EFEM_API efem_status efem_mesh_unit(const char* kind, int n, efem_mesh** out);
EFEM_API efem_status efem_mesh_read(const char* path, efem_mesh** out);
EFEM_API void efem_mesh_destroy(efem_mesh* mesh);
EFEM_API size_t efem_mesh_num_cells(const efem_mesh* mesh);
EFEM_API size_t efem_mesh_num_vertices(const efem_mesh* mesh);
/* format: "mesh" (re-readable text) or "vtk". */
EFEM_API efem_status efem_mesh_write(const efem_mesh* mesh, const char* path, const char* format);

typedef struct efem_config {
  const char* problem; /* unit2d, unit3d, lshaped, fichera */
  int lshaped_n;
  const char* cell; /* hex or tet */
  int order;
  int steps;
  int adaptive;
  double mark_fraction;
  double tol;
  int max_iterations;
  int initial_divisions; /* 0: problem default */
  const char* solver;    /* auto, cg, direct */
  uint64_t seed;
  const char* matrix_dump; /* NULL or prefix for Matrix Market files */
} efem_config;

typedef struct efem_record {
  int step;
  double h;
  int n_dofs;
  int n_cells;
  double l2_error;
  double curl_error;
  double hcurl_error;
  int iterations;
  double residual;
} efem_record;

typedef struct efem_slopes {
  double l2_last;
  double hcurl_last;
  double l2_fit;
  double hcurl_fit;
} efem_slopes;

typedef void (*efem_step_fn)(const efem_record* record, void* user);

EFEM_API void efem_config_default(efem_config* config);
EFEM_API efem_status efem_expected_slope(const efem_config* config, double* out);

/* Runs the refinement loop. On solver failure the status is
 * EFEM_ERR_CONVERGENCE and *out still receives the completed steps. */
EFEM_API efem_status efem_experiment_run(const efem_config* config, efem_step_fn on_step,
                                         void* user, efem_result** out);
EFEM_API void efem_result_destroy(efem_result* result);
EFEM_API size_t efem_result_num_records(const efem_result* result);
EFEM_API efem_status efem_result_record(const efem_result* result, size_t index,
                                        efem_record* out);
EFEM_API efem_status efem_result_slopes(const efem_result* result, efem_slopes* out);
EFEM_API efem_status efem_result_write_csv(const efem_result* result, const char* path);
EFEM_API efem_status efem_result_write_slopes(const efem_result* result, const char* path);
EFEM_API efem_status efem_result_write_plot(const efem_result* result, const char* path,
                                            const char* csv_name);
/* Mesh of the last completed step; VTK output carries the cell L2 errors. */
EFEM_API efem_status efem_result_write_mesh(const efem_result* result, const char* path,
                                            const char* format);
/* Number of adaptive records above min_dofs not strictly below the uniform
 * curve in the H(curl) norm (metric 0) or the L2 norm (metric 1). */
EFEM_API efem_status efem_compare_curves(const efem_result* adaptive, const efem_result* uniform,
                                         int min_dofs, int metric, int* violations);

#ifdef __cplusplus
}
#endif

#endif /* EDGEFEM_H */
