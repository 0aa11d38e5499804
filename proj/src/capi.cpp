// Copyright 2026 The pdkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pdkit/pdkit.h"

#include "pdkit/bench.hpp"
#include "pdkit/mpr.hpp"
#include "pdkit/penetration.hpp"

#include <json.hpp>

#include <exception>
#include <fstream>
#include <memory>
#include <new>
#include <string>

struct pdkit_shape {
  pdkit::ConvexShape shape;
};

struct pdkit_bench_report {
  pdkit::BenchConfig config;
  pdkit::BenchReport report;
  std::string summary_json;
};

namespace {

thread_local std::string last_error;

pdkit_error map_code(pdkit::ErrorCode code) {
  switch (code) {
    case pdkit::ErrorCode::kInvalidArgument: return PDKIT_ERR_INVALID_ARGUMENT;
    case pdkit::ErrorCode::kZeroDirection: return PDKIT_ERR_ZERO_DIRECTION;
    case pdkit::ErrorCode::kInvalidShape: return PDKIT_ERR_INVALID_SHAPE;
    case pdkit::ErrorCode::kPointNotOnBoundary:
      return PDKIT_ERR_POINT_NOT_ON_BOUNDARY;
    case pdkit::ErrorCode::kDegenerateGeometry:
      return PDKIT_ERR_DEGENERATE_GEOMETRY;
    case pdkit::ErrorCode::kIterationLimit: return PDKIT_ERR_ITERATION_LIMIT;
    case pdkit::ErrorCode::kNotColliding: return PDKIT_ERR_NOT_COLLIDING;
    case pdkit::ErrorCode::kSamplingExhausted:
      return PDKIT_ERR_SAMPLING_EXHAUSTED;
    case pdkit::ErrorCode::kParse: return PDKIT_ERR_PARSE;
    case pdkit::ErrorCode::kIo: return PDKIT_ERR_IO;
  }
  return PDKIT_ERR_INTERNAL;
}

pdkit_error fail(pdkit_error code, const std::string& message) {
  last_error = message;
  return code;
}

// Runs `body`, translating exceptions into error codes.
template <class Body>
pdkit_error guarded(Body&& body) {
  try {
    body();
    return PDKIT_OK;
  } catch (const pdkit::Error& e) {
    return fail(map_code(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(PDKIT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PDKIT_ERR_INTERNAL, e.what());
  }
}

pdkit_error null_argument(const char* name) {
  return fail(PDKIT_ERR_INVALID_ARGUMENT, std::string(name) + " is NULL");
}

pdkit::Pose to_pose(const pdkit_pose& p) {
  const pdkit::Quaternion q(p.quaternion[0], p.quaternion[1], p.quaternion[2],
                            p.quaternion[3]);
  return pdkit::Pose(q, pdkit::Vector3(p.translation[0], p.translation[1],
                                       p.translation[2]));
}

pdkit::Vector3 to_vector(const double v[3]) { return {v[0], v[1], v[2]}; }

void copy_vector(const pdkit::Vector3& v, double out[3]) {
  out[0] = v.x();
  out[1] = v.y();
  out[2] = v.z();
}

pdkit::PenetrationOptions to_options(const pdkit_options& o) {
  pdkit::PenetrationOptions options;
  switch (o.algorithm) {
    case PDKIT_ALGO_SQP: options.algorithm = pdkit::Algorithm::kSqpShortcut; break;
    case PDKIT_ALGO_SQP_FIXED: options.algorithm = pdkit::Algorithm::kSqpFixed; break;
    case PDKIT_ALGO_EPA: options.algorithm = pdkit::Algorithm::kEpa; break;
    default:
      throw pdkit::Error(pdkit::ErrorCode::kInvalidArgument,
                         "unknown algorithm");
  }
  if (o.has_warm_start) options.warm_start = to_vector(o.warm_start);
  options.config.max_sqp_iters = o.max_sqp_iters;
  options.config.direction_tol = o.direction_tol;
  options.config.gap_tol = o.gap_tol;
  options.config.delta = o.delta;
  options.epa_tol = o.epa_tol;
  return options;
}

template <class Factory>
pdkit_error new_shape(pdkit_shape** out, Factory&& factory) {
  if (out == nullptr) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new pdkit_shape{factory()}; });
}

nlohmann::json optional_json(const std::optional<double>& x) {
  return x ? nlohmann::json(*x) : nlohmann::json(nullptr);
}

}  // namespace

extern "C" {

const char* pdkit_version(void) { return "0.1.0"; }

const char* pdkit_last_error(void) { return last_error.c_str(); }

const char* pdkit_error_string(pdkit_error code) {
  switch (code) {
    case PDKIT_OK: return "Ok";
    case PDKIT_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case PDKIT_ERR_ZERO_DIRECTION: return "ZeroDirection";
    case PDKIT_ERR_INVALID_SHAPE: return "InvalidShape";
    case PDKIT_ERR_POINT_NOT_ON_BOUNDARY: return "PointNotOnBoundary";
    case PDKIT_ERR_DEGENERATE_GEOMETRY: return "DegenerateGeometry";
    case PDKIT_ERR_ITERATION_LIMIT: return "IterationLimit";
    case PDKIT_ERR_NOT_COLLIDING: return "NotColliding";
    case PDKIT_ERR_SAMPLING_EXHAUSTED: return "SamplingExhausted";
    case PDKIT_ERR_PARSE: return "Parse";
    case PDKIT_ERR_IO: return "Io";
    case PDKIT_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

const char* pdkit_pd_status_string(pdkit_pd_status status) {
  return pdkit::to_string(static_cast<pdkit::PdStatus>(status));
}

pdkit_pose pdkit_pose_identity(void) {
  return pdkit_pose{{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0, 0.0}};
}

void pdkit_options_default(pdkit_options* options) {
  if (options == nullptr) return;
  const pdkit::PenetrationOptions d;
  options->algorithm = PDKIT_ALGO_SQP;
  options->has_warm_start = 0;
  options->warm_start[0] = options->warm_start[1] = options->warm_start[2] = 0.0;
  options->max_sqp_iters = d.config.max_sqp_iters;
  options->direction_tol = d.config.direction_tol;
  options->gap_tol = d.config.gap_tol;
  options->delta = d.config.delta;
  options->epa_tol = d.epa_tol;
}

pdkit_error pdkit_shape_sphere(double radius, pdkit_shape** out) {
  return new_shape(out, [&] { return pdkit::make_sphere(radius); });
}

pdkit_error pdkit_shape_capsule(double half_length, double radius,
                                pdkit_shape** out) {
  return new_shape(out,
                   [&] { return pdkit::make_capsule(half_length, radius); });
}

pdkit_error pdkit_shape_box(double hx, double hy, double hz,
                            pdkit_shape** out) {
  return new_shape(
      out, [&] { return pdkit::make_box(pdkit::Vector3(hx, hy, hz)); });
}

pdkit_error pdkit_shape_ellipsoid(double a, double b, double c,
                                  pdkit_shape** out) {
  return new_shape(
      out, [&] { return pdkit::make_ellipsoid(pdkit::Vector3(a, b, c)); });
}

pdkit_error pdkit_shape_polytope(const double* xyz, size_t n_vertices,
                                 pdkit_shape** out) {
  if (xyz == nullptr && n_vertices > 0) return null_argument("xyz");
  return new_shape(out, [&] {
    std::vector<pdkit::Vector3> vertices;
    vertices.reserve(n_vertices);
    for (size_t i = 0; i < n_vertices; ++i) {
      vertices.emplace_back(xyz[3 * i], xyz[3 * i + 1], xyz[3 * i + 2]);
    }
    return pdkit::make_polytope(std::move(vertices));
  });
}

pdkit_error pdkit_shape_polytope_load(const char* path, pdkit_shape** out) {
  if (path == nullptr) return null_argument("path");
  return new_shape(out, [&] { return pdkit::load_polytope(path); });
}

pdkit_error pdkit_shape_icosphere(double radius, int n_vertices,
                                  pdkit_shape** out) {
  return new_shape(
      out, [&] { return pdkit::tessellated_sphere(radius, n_vertices); });
}

void pdkit_shape_free(pdkit_shape* shape) { delete shape; }

size_t pdkit_shape_vertex_count(const pdkit_shape* shape) {
  if (shape == nullptr) return 0;
  const auto* poly = std::get_if<pdkit::ConvexPolytope>(&shape->shape.geometry());
  return poly != nullptr ? poly->vertices.size() : 0;
}

pdkit_error pdkit_support(const pdkit_shape* shape, const pdkit_pose* pose,
                          const double direction[3], double out[3]) {
  if (shape == nullptr) return null_argument("shape");
  if (pose == nullptr) return null_argument("pose");
  if (direction == nullptr) return null_argument("direction");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    copy_vector(
        pdkit::support(shape->shape, to_pose(*pose), to_vector(direction)),
        out);
  });
}

pdkit_error pdkit_overlaps(const pdkit_shape* shape1, const pdkit_pose* pose1,
                           const pdkit_shape* shape2, const pdkit_pose* pose2,
                           int* out) {
  if (shape1 == nullptr || shape2 == nullptr) return null_argument("shape");
  if (pose1 == nullptr || pose2 == nullptr) return null_argument("pose");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    *out = pdkit::overlaps(shape1->shape, to_pose(*pose1), shape2->shape,
                           to_pose(*pose2))
               ? 1
               : 0;
  });
}

pdkit_error pdkit_penetration(const pdkit_shape* shape1,
                              const pdkit_pose* pose1,
                              const pdkit_shape* shape2,
                              const pdkit_pose* pose2,
                              const pdkit_options* options,
                              pdkit_result* result) {
  if (shape1 == nullptr || shape2 == nullptr) return null_argument("shape");
  if (pose1 == nullptr || pose2 == nullptr) return null_argument("pose");
  if (result == nullptr) return null_argument("result");
  pdkit_options defaults;
  pdkit_options_default(&defaults);
  return guarded([&] {
    const pdkit::PDResult r = pdkit::penetration(
        shape1->shape, to_pose(*pose1), shape2->shape, to_pose(*pose2),
        to_options(options != nullptr ? *options : defaults));
    result->depth = r.depth;
    copy_vector(r.direction, result->direction);
    copy_vector(r.v_star, result->v_star);
    copy_vector(r.witness1, result->witness1);
    copy_vector(r.witness2, result->witness2);
    result->status = static_cast<pdkit_pd_status>(r.status);
    result->sqp_iterations = r.sqp_iterations;
    result->support_calls = r.support_calls;
  });
}

void pdkit_bench_config_default(pdkit_bench_config* config) {
  if (config == nullptr) return;
  const pdkit::BenchConfig d;
  config->seed = d.seed;
  config->n_trials = d.n_trials;
  config->suite = PDKIT_SUITE_PRIMITIVES;
  config->deviations_deg = nullptr;
  config->n_deviations = 0;
  config->resolutions = nullptr;
  config->n_resolutions = 0;
  config->algorithm_mask = PDKIT_ALGO_MASK_ALL;
  config->include_grazing = 0;
  config->threads = 1;
  pdkit_options_default(&config->options);
}

pdkit_error pdkit_bench_run(const pdkit_bench_config* config,
                            pdkit_bench_report** out) {
  if (config == nullptr) return null_argument("config");
  if (out == nullptr) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    auto handle = std::make_unique<pdkit_bench_report>();
    pdkit::BenchConfig& c = handle->config;
    c.seed = config->seed;
    c.n_trials = config->n_trials;
    c.suite = config->suite == PDKIT_SUITE_POLYTOPES
                  ? pdkit::Suite::kPolytopes
                  : pdkit::Suite::kPrimitives;
    if (config->deviations_deg != nullptr) {
      c.deviations_deg.assign(config->deviations_deg,
                              config->deviations_deg + config->n_deviations);
    }
    if (config->resolutions != nullptr) {
      c.resolutions.assign(config->resolutions,
                           config->resolutions + config->n_resolutions);
    }
    c.algorithms.clear();
    const pdkit::Algorithm all[3] = {pdkit::Algorithm::kSqpShortcut,
                                     pdkit::Algorithm::kSqpFixed,
                                     pdkit::Algorithm::kEpa};
    for (int i = 0; i < 3; ++i) {
      if (config->algorithm_mask & (1u << i)) c.algorithms.push_back(all[i]);
    }
    c.include_grazing = config->include_grazing != 0;
    c.threads = config->threads;
    const pdkit::PenetrationOptions options = to_options(config->options);
    c.sqp = options.config;
    c.epa_tol = options.epa_tol;

    handle->report = pdkit::run_benchmark(c);
    nlohmann::json rows = nlohmann::json::array();
    for (const pdkit::SummaryRow& row : handle->report.summary) {
      rows.push_back({{"pair_id", row.pair_id},
                      {"algorithm", pdkit::to_string(row.algorithm)},
                      {"deviation_deg", optional_json(row.deviation_deg)},
                      {"count", row.count},
                      {"converged", row.converged},
                      {"certificate_failures", row.certificate_failures},
                      {"mean_abs_error", optional_json(row.mean_abs_error)},
                      {"median_abs_error", optional_json(row.median_abs_error)},
                      {"mean_support_calls", row.mean_support_calls},
                      {"mean_wall_time_us", row.mean_wall_time_us}});
    }
    handle->summary_json = rows.dump();
    *out = handle.release();
  });
}

void pdkit_bench_free(pdkit_bench_report* report) { delete report; }

size_t pdkit_bench_record_count(const pdkit_bench_report* report) {
  return report != nullptr ? report->report.records.size() : 0;
}

int pdkit_bench_violations(const pdkit_bench_report* report) {
  return report != nullptr ? report->report.violations : 0;
}

const char* pdkit_bench_summary_json(const pdkit_bench_report* report) {
  return report != nullptr ? report->summary_json.c_str() : "[]";
}

pdkit_error pdkit_bench_write_csv(const pdkit_bench_report* report,
                                  const char* path) {
  if (report == nullptr) return null_argument("report");
  if (path == nullptr) return null_argument("path");
  return guarded([&] {
    std::ofstream out(path);
    if (!out) {
      throw pdkit::Error(pdkit::ErrorCode::kIo,
                         std::string("cannot open ") + path);
    }
    pdkit::write_csv(out, report->config, report->report);
    if (!out) {
      throw pdkit::Error(pdkit::ErrorCode::kIo,
                         std::string("write failed: ") + path);
    }
  });
}

}  // extern "C"
