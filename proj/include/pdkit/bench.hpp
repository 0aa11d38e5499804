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

// Benchmark harness: random colliding poses, perturbed initial directions,
// icosphere polytopes, per-trial records and summaries.

#pragma once

#include "pdkit/penetration.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace pdkit {

using Rng = std::mt19937_64;

/// Default primitive dimensions of the benchmark suites.
inline constexpr double kBenchSphereRadius = 0.5;
inline constexpr double kBenchCapsuleRadius = 0.25;
inline constexpr double kBenchCapsuleHalfLength = 0.5;
/// Minimum PD of an accepted pose unless grazing contacts are included.
inline constexpr double kGrazingDepth = 1e-4;
inline constexpr int kMaxPoseRejections = 1000;

/// Subdivided icosahedron projected onto a sphere. The vertex count is the
/// level count 10 * 4^L + 2 nearest to `n_vertices` (>= 12).
ConvexShape tessellated_sphere(double radius, int n_vertices);

/// d_true rotated by exactly n_deg about a uniformly random axis orthogonal
/// to it. Throws ZeroDirection, InvalidArgument unless 0 <= n_deg < 90.
Vector3 perturb_direction(const Vector3& d_true, double n_deg, Rng& rng);

/// Same rotation about a given axis (projected orthogonal to d_true).
Vector3 perturb_direction(const Vector3& d_true, double n_deg,
                          const Vector3& axis);

/// Uniformly random rotation from a normalized Gaussian 4-vector.
Quaternion random_rotation(Rng& rng);

struct PairSpec {
  std::string id;
  ConvexShape shape1;
  ConvexShape shape2;
  /// Rounded stand-in for shape1 whose analytic PD direction seeds the
  /// solvers (shape1 itself for primitive pairs).
  ConvexShape reference1;
  /// Analytic depth is ground truth (primitive pairs only).
  bool has_oracle;
};

/// sphere-sphere, capsule-capsule, sphere-capsule at the bench dimensions.
std::vector<PairSpec> primitive_pairs();
/// icosphere<N>-capsule for each resolution.
std::vector<PairSpec> polytope_pairs(const std::vector<int>& resolutions);

struct PosePair {
  Pose pose1;
  Pose pose2;
};

/// Random orientations and a center offset uniform in the ball of radius
/// r1 + r2 (circumscribed radii), rejected until the shapes overlap with
/// PD >= min_depth. Throws SamplingExhausted after kMaxPoseRejections.
PosePair random_colliding_pose(const PairSpec& pair, Rng& rng,
                               double min_depth = kGrazingDepth);

/// Translating A1 by -(1 + 1e-4) * v_star leaves the shapes disjoint.
bool separation_certificate(const ConvexShape& shape1, const Pose& pose1,
                            const ConvexShape& shape2, const Pose& pose2,
                            const Vector3& v_star);

enum class Suite { kPrimitives, kPolytopes };

struct BenchConfig {
  std::uint64_t seed = 42;
  int n_trials = 10000;
  Suite suite = Suite::kPrimitives;
  std::vector<double> deviations_deg = {5.0};
  std::vector<int> resolutions = {12, 42, 162, 642, 2562};
  std::vector<Algorithm> algorithms = {Algorithm::kSqpShortcut,
                                       Algorithm::kSqpFixed, Algorithm::kEpa};
  SqpConfig sqp;
  double epa_tol = 1e-6;
  bool include_grazing = false;
  int threads = 1;

  /// Throws InvalidArgument.
  void validate() const;
};

struct TrialRecord {
  std::string pair_id;
  std::uint64_t seed = 0;  // per-trial seed; replays the pose
  Pose pose1;
  Pose pose2;
  Algorithm algorithm = Algorithm::kSqpShortcut;
  std::optional<double> deviation_deg;  // empty for EPA
  double depth = 0.0;
  Vector3 direction = Vector3::Zero();
  std::optional<double> oracle_depth;
  std::optional<double> abs_error;
  std::int64_t support_calls = 0;
  int sqp_iterations = 0;
  double wall_time_us = 0.0;
  std::string status;
};

struct SummaryRow {
  std::string pair_id;
  Algorithm algorithm = Algorithm::kSqpShortcut;
  std::optional<double> deviation_deg;
  int count = 0;
  int converged = 0;
  int certificate_failures = 0;
  std::optional<double> mean_abs_error;
  std::optional<double> median_abs_error;
  double mean_support_calls = 0.0;
  double mean_wall_time_us = 0.0;
};

struct BenchReport {
  std::vector<TrialRecord> records;
  std::vector<SummaryRow> summary;
  /// Certificate failures, solver errors and NotColliding on colliding poses.
  int violations = 0;
};

/// Runs every pair of the suite for n_trials poses. Each pose runs the SQP
/// algorithms once per deviation and EPA once. Deterministic given the
/// seed (wall times excepted).
BenchReport run_benchmark(const BenchConfig& config);

std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records);

/// CSV with `#` comment lines describing the configuration, then the
/// TrialRecord columns in declaration order.
void write_csv(std::ostream& out, const BenchConfig& config,
               const BenchReport& report);

}  // namespace pdkit
