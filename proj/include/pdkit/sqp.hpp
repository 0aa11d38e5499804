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

// Penetration depth as min |v| over v on boundary(D), solved by sequential
// quadratic programming.
//
// The constraint "v outside interior(D)" is linearized at the current
// boundary estimate into the half-space beyond a supporting plane, and the
// QP step is the projection of the origin onto that plane. For an explicit
// convex set the plane comes from the gradient (sqp_explicit). For a
// Minkowski difference only support points are available, so the plane is
// the MPR portal normal and the next search direction is that normal
// (pd_sqp_fixed_tol, pd_sqp).
//
// All solvers return the upper-bound point z (origin projected on the last
// supporting plane): the depth is overestimated rather than underestimated.

#pragma once

#include "pdkit/minkowski.hpp"
#include "pdkit/mpr.hpp"
#include "pdkit/result.hpp"

#include <optional>
#include <vector>

namespace pdkit {

struct SqpConfig {
  int max_sqp_iters = 100;
  double direction_tol = 1e-6;  // on 1 - dot(old, new)
  double gap_tol = 1e-6;        // on |z| - |p|, meters
  double delta = 1e-6;          // mpr_refine tolerance, fixed-tol path only

  /// Throws InvalidArgument unless every field is strictly positive.
  void validate() const;
};

struct SqpStep {
  Vector3 p;
  Vector3 z;
  Vector3 d_portal;
  int mpr_iterations;
  MprStatus mpr_status;
};
using SqpTrace = std::vector<SqpStep>;

/// (1 - dot(normalized(p), d_portal)) <= direction_tol and
/// |z| - |p| <= gap_tol. With p at the origin only the gap is tested.
bool should_terminate(const Vector3& p, const Vector3& z,
                      const Vector3& d_portal, const SqpConfig& config);

/// Normalized warm start when given (and non-zero), else the direction from
/// the interior anchor toward the origin, else +x.
Vector3 init_direction(const MinkowskiDifference& diff,
                       const std::optional<Vector3>& warm_start = std::nullopt);

/// Intersection of the ray {t * dir} with the boundary of an ellipsoid that
/// contains the origin, by bisection on the level function.
Vector3 ellipsoid_ray_boundary(const ConvexShape& ellipsoid, const Pose& pose,
                               const Vector3& dir);

/// SQP on an explicit level-set ellipsoid E (origin inside). `iterates`
/// receives v_0, v_1, ... when given.
PDResult sqp_explicit(const ConvexShape& ellipsoid, const Pose& pose,
                      const Vector3& v_init, const SqpConfig& config = {},
                      std::vector<Vector3>* iterates = nullptr);

/// SQP driven by mpr_refine(delta) along each search direction.
PDResult pd_sqp_fixed_tol(MinkowskiDifference& diff, const Vector3& d_init,
                          const SqpConfig& config = {},
                          SqpTrace* trace = nullptr);

/// SQP driven by mpr_shortcut; no delta.
PDResult pd_sqp(MinkowskiDifference& diff, const Vector3& d_init,
                const SqpConfig& config = {}, SqpTrace* trace = nullptr);

}  // namespace pdkit
