/*
 * Copyright 2026 The hcurlmg Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef HCURLMG_H_
#define HCURLMG_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define HCURLMG_API __declspec(dllexport)
#else
#define HCURLMG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hcurlmg_status {
  HCURLMG_OK = 0,
  HCURLMG_ERR_ARGUMENT = 1,      /* null pointer, bad index, size mismatch */
  HCURLMG_ERR_CONFIG = 2,        /* unknown name or invalid option value */
  HCURLMG_ERR_MESH = 3,          /* invalid mesh, element or refinement */
  HCURLMG_ERR_NUMERIC = 4,       /* evaluation or factorization failure */
  HCURLMG_ERR_IO = 5,
  HCURLMG_ERR_INTERNAL = 6
} hcurlmg_status;

/* Message of the last failed call on this thread ("" if none). */
HCURLMG_API const char* hcurlmg_last_error(void);
HCURLMG_API const char* hcurlmg_version(void);

/* ---- meshes ---- */

typedef struct hcurlmg_mesh hcurlmg_mesh;

typedef struct hcurlmg_mesh_info {
  uint64_t num_vertices;
  uint64_t num_leaves;
  uint64_t num_tets;      /* whole refinement forest */
  int32_t max_level;
  double volume;          /* sum of leaf volumes */
  double initial_volume;
  double max_shape_ratio; /* max diam / inradius over leaves */
  double min_width;
  double max_width;
  int32_t conforming;     /* 1 when the leaf mesh passes the face-pairing scan */
  int32_t face_levels_ok; /* 1 when the face-level relations of bisection hold */
} hcurlmg_mesh_info;

/* Initial mesh of a problem preset ("lshape" or "crack"). */
HCURLMG_API hcurlmg_status hcurlmg_mesh_preset(const char* problem, hcurlmg_mesh** out);
HCURLMG_API hcurlmg_status hcurlmg_mesh_read(const char* path, hcurlmg_mesh** out);
HCURLMG_API hcurlmg_status hcurlmg_mesh_write(const hcurlmg_mesh* mesh, const char* path);
HCURLMG_API hcurlmg_status hcurlmg_mesh_refine_uniform(hcurlmg_mesh* mesh, int times);
/* Refines the given leaf ids (and whatever conformity requires). */
HCURLMG_API hcurlmg_status hcurlmg_mesh_refine(hcurlmg_mesh* mesh, const int32_t* leaves, size_t count);
HCURLMG_API hcurlmg_status hcurlmg_mesh_get_info(const hcurlmg_mesh* mesh, hcurlmg_mesh_info* out);
HCURLMG_API void hcurlmg_mesh_free(hcurlmg_mesh* mesh);

/* ---- adaptive runs ---- */

typedef enum hcurlmg_solve_mode { HCURLMG_MODE_ITERATION = 0, HCURLMG_MODE_PCG = 1 } hcurlmg_solve_mode;

typedef struct hcurlmg_run_options {
  double theta;
  double reduction;
  uint64_t max_elements;
  int32_t pre_smoothing;
  int32_t post_smoothing;
  int32_t nodal_smoothing;
  hcurlmg_solve_mode mode;
  int32_t max_iterations;
  uint64_t seed;
  int32_t initial_refinements;
  int32_t contraction_iterations;
  int32_t max_stages; /* 0: no cap */
} hcurlmg_run_options;

typedef struct hcurlmg_row {
  int32_t n_it;
  uint64_t n_el;
  uint64_t n_dofs;
  double e_rel;
  double eta_h;
  double eta_max;
  int32_t mg_iters;
  double contraction;
  uint64_t work_units;
  int32_t levels;
  int32_t converged;
} hcurlmg_row;

typedef void (*hcurlmg_row_callback)(const hcurlmg_row* row, void* user);
typedef struct hcurlmg_report hcurlmg_report;

HCURLMG_API void hcurlmg_run_options_default(hcurlmg_run_options* opts);

/* Runs the adaptive loop on a preset. When csv_path is non-null the CSV is
 * written row by row; on_row (optional) sees every row as it is produced. */
HCURLMG_API hcurlmg_status hcurlmg_run_adaptive(const char* problem, const hcurlmg_run_options* opts,
                                                const char* csv_path, hcurlmg_row_callback on_row, void* user,
                                                hcurlmg_report** out);
HCURLMG_API size_t hcurlmg_report_size(const hcurlmg_report* report);
HCURLMG_API hcurlmg_status hcurlmg_report_row(const hcurlmg_report* report, size_t index, hcurlmg_row* out);
HCURLMG_API void hcurlmg_report_free(hcurlmg_report* report);

/* ---- verification ---- */

typedef struct hcurlmg_verify_result hcurlmg_verify_result;

typedef struct hcurlmg_check {
  const char* name; /* owned by the result */
  double value;
  double limit;
  int32_t passed;
} hcurlmg_check;

/* Suites: cdp, prolongation, kernel, scs, coloring, contraction, estimator. */
HCURLMG_API hcurlmg_status hcurlmg_verify(const char* suite, uint64_t seed, const char* problem, int levels,
                                          hcurlmg_verify_result** out);
HCURLMG_API size_t hcurlmg_verify_size(const hcurlmg_verify_result* result);
HCURLMG_API hcurlmg_status hcurlmg_verify_check(const hcurlmg_verify_result* result, size_t index,
                                                hcurlmg_check* out);
HCURLMG_API int hcurlmg_verify_passed(const hcurlmg_verify_result* result);
HCURLMG_API void hcurlmg_verify_free(hcurlmg_verify_result* result);

#ifdef __cplusplus
}
#endif

#endif /* HCURLMG_H_ */
