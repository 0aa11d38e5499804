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

// Ground truth that shares no code path with the support-function solvers:
// closed-form PD for sphere/capsule pairs and a direction-sampling upper
// bound for arbitrary differences.

#pragma once

#include "pdkit/minkowski.hpp"

#include <utility>
#include <vector>

namespace pdkit {

struct AnalyticPD {
  double depth = 0.0;
  Vector3 direction = Vector3::UnitX();  // same sense as PDResult::direction
  /// Core segments touch, so any direction is optimal; +x is reported.
  bool degenerate = false;
};

/// Closest points (on segment p0-p1, on segment q0-q1). Either segment may
/// be a single point.
std::pair<Vector3, Vector3> closest_segment_points(const Vector3& p0,
                                                   const Vector3& p1,
                                                   const Vector3& q0,
                                                   const Vector3& q1);

/// PD of two rounded shapes (sphere or capsule) from their core segments.
/// Throws NotColliding when the depth is <= 0, InvalidShape for other kinds.
AnalyticPD analytic_pd(const ConvexShape& shape1, const Pose& pose1,
                       const ConvexShape& shape2, const Pose& pose2);

/// Exact membership x in A1 - A2 for rounded shapes: the core segments of
/// A1 and A2 + x are within r1 + r2 of each other.
bool rounded_difference_contains(const ConvexShape& shape1, const Pose& pose1,
                                 const ConvexShape& shape2, const Pose& pose2,
                                 const Vector3& x);

/// Distance along unit ray `u` from the origin to boundary(A1 - A2) by
/// bisection on rounded_difference_contains. Origin must be inside.
double rounded_ray_boundary(const ConvexShape& shape1, const Pose& pose1,
                            const ConvexShape& shape2, const Pose& pose2,
                            const Vector3& u);

/// First n points of a nested low-discrepancy sequence on the unit sphere;
/// the first m < n points are exactly sphere_directions(m).
std::vector<Vector3> sphere_directions(int n);

/// min over sphere_directions(n_dirs) of the upper bound |q| from
/// mpr_refine(1e-9): an upper bound on PD, non-increasing in n_dirs.
/// Support calls are added to diff's counter. Throws NotColliding.
double brute_force_pd(MinkowskiDifference& diff, int n_dirs, int threads = 1);

}  // namespace pdkit
