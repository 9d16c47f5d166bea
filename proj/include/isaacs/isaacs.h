// Copyright 2026 The isaacs-dg Authors
// SPDX-License-Identifier: Apache-2.0

/* C interface to the isaacs-dg solver library.
 *
 * All objects are opaque and owned by the caller once returned; release them with the
 * matching *_destroy function. Functions returning isaacs_status leave a message for
 * isaacs_last_error() on failure (per thread).
 */
#ifndef ISAACS_ISAACS_H_
#define ISAACS_ISAACS_H_

#ifdef __cplusplus
extern "C" {
#endif

#if defined(ISAACS_BUILDING_LIBRARY)
#define ISAACS_API __attribute__((visibility("default")))
#else
#define ISAACS_API
#endif

typedef enum isaacs_status {
  ISAACS_OK = 0,
  ISAACS_ERR_INVALID_ARGUMENT = 1,
  ISAACS_ERR_NON_CONFORMING = 2,
  ISAACS_ERR_DEGENERATE_ELEMENT = 3,
  ISAACS_ERR_IO = 4,
  ISAACS_ERR_SINGULAR_MATRIX = 5,
  ISAACS_ERR_NOT_CONVERGED = 6,
  ISAACS_ERR_INTERNAL = 7
} isaacs_status;

typedef struct isaacs_mesh isaacs_mesh;
typedef struct isaacs_run_result isaacs_run_result;

ISAACS_API const char* isaacs_version(void);
/* Message of the last failed call on this thread; empty if none. */
ISAACS_API const char* isaacs_last_error(void);
ISAACS_API const char* isaacs_status_string(isaacs_status status);

/* ---- meshes ---- */

/* xy holds 2*num_vertices coordinates, triangles 3*num_elements 0-based vertex indices. */
ISAACS_API isaacs_status isaacs_mesh_create(const double* xy, int num_vertices, const int* triangles,
                                            int num_elements, isaacs_mesh** out);
ISAACS_API isaacs_status isaacs_mesh_read(const char* path, isaacs_mesh** out);
ISAACS_API isaacs_status isaacs_mesh_write(const isaacs_mesh* mesh, const char* path);
/* Newest-vertex bisection of the marked elements plus closure. */
ISAACS_API isaacs_status isaacs_mesh_refine(const isaacs_mesh* mesh, const int* marked, int num_marked,
                                            isaacs_mesh** out);
ISAACS_API isaacs_status isaacs_mesh_refine_uniform(const isaacs_mesh* mesh, isaacs_mesh** out);
ISAACS_API int isaacs_mesh_num_vertices(const isaacs_mesh* mesh);
ISAACS_API int isaacs_mesh_num_elements(const isaacs_mesh* mesh);
ISAACS_API int isaacs_mesh_num_faces(const isaacs_mesh* mesh);
/* Copies 2*num_vertices doubles / 3*num_elements ints. */
ISAACS_API isaacs_status isaacs_mesh_get_vertices(const isaacs_mesh* mesh, double* xy);
ISAACS_API isaacs_status isaacs_mesh_get_elements(const isaacs_mesh* mesh, int* triangles);
ISAACS_API void isaacs_mesh_destroy(isaacs_mesh* mesh);

/* ---- benchmark runs ---- */

typedef struct isaacs_step_record {
  int step;
  int ndofs;
  double error;        /* ||u - u_T||_T, NaN without an exact solution */
  double eta;
  double effectivity;
  int newton_iters;    /* linear solves in this step */
  double h_max;
  int num_elements;
  int outer_iters;
  double final_residual;
  double last_ratio;
  double local_efficiency;
} isaacs_step_record;

typedef void (*isaacs_step_callback)(const isaacs_step_record* record, void* user_data);

typedef struct isaacs_run_config {
  const char* experiment;  /* "pentagon", "pentagon-isaacs", "square-laplace", "square-smooth-hjb" */
  const char* mode;        /* "adaptive" or "uniform" */
  int s;                   /* 0: discontinuous, 1: continuous */
  int p;
  int q;                   /* lifting degree, negative for p - 2 */
  double theta;
  int chi;
  double sigma;            /* negative for 10 p^2 */
  double rho;              /* negative for 10 p^4 */
  int n_alpha;
  int n_beta;
  double phi;
  double alpha_max;
  double bulk;
  int max_dofs;
  int max_steps;
  int levels;              /* uniform mode */
  double tol;
  int max_outer;
  int max_inner;
  const char* out;           /* step CSV, may be NULL */
  const char* export_mesh;   /* final mesh, may be NULL */
  const char* export_eta;    /* per-element estimator CSV, may be NULL */
  const char* export_trace;  /* solver trace of the last step, may be NULL */
  isaacs_step_callback on_step;
  void* user_data;
} isaacs_run_config;

/* Fills the defaults: pentagon, adaptive, s=0, p=2, theta=1/2, 16x32 controls, bulk 0.25, 5e4 dofs. */
ISAACS_API void isaacs_run_config_init(isaacs_run_config* config);

/* Runs the study. On ISAACS_ERR_NOT_CONVERGED, *out still receives the completed steps
 * and the CSV written so far is kept. */
ISAACS_API isaacs_status isaacs_run(const isaacs_run_config* config, isaacs_run_result** out);
ISAACS_API int isaacs_result_num_steps(const isaacs_run_result* result);
ISAACS_API isaacs_status isaacs_result_step(const isaacs_run_result* result, int index, isaacs_step_record* record);
/* Least-squares slope of log(error) against log(ndofs) over the last `tail` steps. */
ISAACS_API double isaacs_result_slope(const isaacs_run_result* result, int tail);
/* Copy of the mesh of the last computed step. */
ISAACS_API isaacs_status isaacs_result_mesh(const isaacs_run_result* result, isaacs_mesh** out);
ISAACS_API void isaacs_result_destroy(isaacs_run_result* result);

#ifdef __cplusplus
}
#endif

#endif  // ISAACS_ISAACS_H_
