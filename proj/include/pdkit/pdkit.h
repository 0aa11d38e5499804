/* Copyright 2026 The pdkit Authors
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

/* C interface of the pdkit shared library.
 *
 * Shapes and benchmark reports are opaque handles owned by the caller and
 * released with the matching *_free function. Every fallible call returns a
 * pdkit_error; on failure pdkit_last_error() describes the problem (the
 * message is thread-local and valid until the next failing call). */

#ifndef PDKIT_PDKIT_H_
#define PDKIT_PDKIT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PDKIT_API __declspec(dllexport)
#else
#define PDKIT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pdkit_error {
  PDKIT_OK = 0,
  PDKIT_ERR_INVALID_ARGUMENT = 1,
  PDKIT_ERR_ZERO_DIRECTION = 2,
  PDKIT_ERR_INVALID_SHAPE = 3,
  PDKIT_ERR_POINT_NOT_ON_BOUNDARY = 4,
  PDKIT_ERR_DEGENERATE_GEOMETRY = 5,
  PDKIT_ERR_ITERATION_LIMIT = 6,
  PDKIT_ERR_NOT_COLLIDING = 7,
  PDKIT_ERR_SAMPLING_EXHAUSTED = 8,
  PDKIT_ERR_PARSE = 9,
  PDKIT_ERR_IO = 10,
  PDKIT_ERR_INTERNAL = 99,
} pdkit_error;

typedef enum pdkit_algorithm {
  PDKIT_ALGO_SQP = 0,       /* SQP with the MPR shortcut */
  PDKIT_ALGO_SQP_FIXED = 1, /* SQP with fixed-tolerance MPR */
  PDKIT_ALGO_EPA = 2,       /* GJK + EPA */
} pdkit_algorithm;

typedef enum pdkit_pd_status {
  PDKIT_PD_CONVERGED = 0,
  PDKIT_PD_ITERATION_LIMIT = 1,
  PDKIT_PD_NOT_COLLIDING = 2,
  PDKIT_PD_DEGENERATE = 3,
} pdkit_pd_status;

typedef struct pdkit_shape pdkit_shape;
typedef struct pdkit_bench_report pdkit_bench_report;

/* x -> R(q) x + t with q = (w, x, y, z); q is normalized on use. */
typedef struct pdkit_pose {
  double translation[3];
  double quaternion[4];
} pdkit_pose;

typedef struct pdkit_options {
  pdkit_algorithm algorithm;
  int has_warm_start;
  double warm_start[3]; /* initial ray, the direction of v_star */
  int max_sqp_iters;
  double direction_tol;
  double gap_tol;
  double delta;
  double epa_tol;
} pdkit_options;

typedef struct pdkit_result {
  double depth;
  double direction[3];
  double v_star[3];
  double witness1[3];
  double witness2[3];
  pdkit_pd_status status;
  int sqp_iterations;
  int64_t support_calls;
} pdkit_result;

PDKIT_API const char* pdkit_version(void);
PDKIT_API const char* pdkit_last_error(void);
PDKIT_API const char* pdkit_error_string(pdkit_error code);
PDKIT_API const char* pdkit_pd_status_string(pdkit_pd_status status);

PDKIT_API pdkit_pose pdkit_pose_identity(void);
PDKIT_API void pdkit_options_default(pdkit_options* options);

PDKIT_API pdkit_error pdkit_shape_sphere(double radius, pdkit_shape** out);
PDKIT_API pdkit_error pdkit_shape_capsule(double half_length, double radius,
                                          pdkit_shape** out);
PDKIT_API pdkit_error pdkit_shape_box(double hx, double hy, double hz,
                                      pdkit_shape** out);
PDKIT_API pdkit_error pdkit_shape_ellipsoid(double a, double b, double c,
                                            pdkit_shape** out);
/* xyz holds n_vertices packed triples. */
PDKIT_API pdkit_error pdkit_shape_polytope(const double* xyz,
                                           size_t n_vertices,
                                           pdkit_shape** out);
/* Vertices from the `v` records of an OBJ-style text file. */
PDKIT_API pdkit_error pdkit_shape_polytope_load(const char* path,
                                                pdkit_shape** out);
/* Subdivided icosahedron with the level count nearest n_vertices. */
PDKIT_API pdkit_error pdkit_shape_icosphere(double radius, int n_vertices,
                                            pdkit_shape** out);
PDKIT_API void pdkit_shape_free(pdkit_shape* shape);
/* Number of vertices for polytopes, 0 otherwise. */
PDKIT_API size_t pdkit_shape_vertex_count(const pdkit_shape* shape);

PDKIT_API pdkit_error pdkit_support(const pdkit_shape* shape,
                                    const pdkit_pose* pose,
                                    const double direction[3],
                                    double out[3]);

PDKIT_API pdkit_error pdkit_overlaps(const pdkit_shape* shape1,
                                     const pdkit_pose* pose1,
                                     const pdkit_shape* shape2,
                                     const pdkit_pose* pose2, int* out);

/* options may be NULL for the defaults. Separated shapes are not an error:
 * the result status is PDKIT_PD_NOT_COLLIDING. */
PDKIT_API pdkit_error pdkit_penetration(const pdkit_shape* shape1,
                                        const pdkit_pose* pose1,
                                        const pdkit_shape* shape2,
                                        const pdkit_pose* pose2,
                                        const pdkit_options* options,
                                        pdkit_result* result);

typedef enum pdkit_suite {
  PDKIT_SUITE_PRIMITIVES = 0,
  PDKIT_SUITE_POLYTOPES = 1,
} pdkit_suite;

/* Bit i selects pdkit_algorithm i. */
#define PDKIT_ALGO_MASK_ALL 0x7u

typedef struct pdkit_bench_config {
  uint64_t seed;
  int n_trials;
  pdkit_suite suite;
  const double* deviations_deg; /* NULL for {5} */
  size_t n_deviations;
  const int* resolutions; /* NULL for {12, 42, 162, 642, 2562} */
  size_t n_resolutions;
  unsigned algorithm_mask;
  int include_grazing;
  int threads;
  pdkit_options options; /* tolerances; algorithm and warm start ignored */
} pdkit_bench_config;

PDKIT_API void pdkit_bench_config_default(pdkit_bench_config* config);
PDKIT_API pdkit_error pdkit_bench_run(const pdkit_bench_config* config,
                                      pdkit_bench_report** out);
PDKIT_API void pdkit_bench_free(pdkit_bench_report* report);
PDKIT_API size_t pdkit_bench_record_count(const pdkit_bench_report* report);
/* Certificate failures, solver errors and NotColliding on colliding poses. */
PDKIT_API int pdkit_bench_violations(const pdkit_bench_report* report);
/* Summary rows as a JSON array; owned by the report. */
PDKIT_API const char* pdkit_bench_summary_json(
    const pdkit_bench_report* report);
PDKIT_API pdkit_error pdkit_bench_write_csv(const pdkit_bench_report* report,
                                            const char* path);

#ifdef __cplusplus
}
#endif

#endif /* PDKIT_PDKIT_H_ */
