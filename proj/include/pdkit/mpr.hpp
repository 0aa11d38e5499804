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

// Minkowski Portal Refinement along an origin ray.
//
// Given a ray {t * d_ray : t >= 0} starting at the origin (which must lie
// inside D = A1 - A2), a portal is a triangle of support points of D that
// the ray passes through. Refining the portal toward the boundary gives,
// at every step:
//
//   p  ray / portal-plane intersection      (|p| <= |v_intersect|)
//   q  ray / supporting-plane intersection  (|v_intersect| <= |q|)
//   z  origin projected on the supporting plane at the candidate point
//
// mpr_refine() stops once the portal and the supporting plane are within
// delta of each other; mpr_shortcut() stops as soon as |z| <= |p|, i.e. as
// soon as the portal normal is a search direction with a smaller upper
// bound than the lower bound along the current ray.

#pragma once

#include "pdkit/minkowski.hpp"

#include <array>
#include <vector>

namespace pdkit {

inline constexpr int kMaxPortalIters = 64;
inline constexpr int kMaxMprIters = 128;

struct Portal {
  Vector3 anchor = Vector3::Zero();  // interior_anchor(D), kept for reporting
  std::array<SupportPoint, 3> s;
  /// The origin sits on boundary(D) (within 1e-12) with outward normal
  /// touch_normal; s holds the support point found along it.
  bool touching = false;
  Vector3 touch_normal = Vector3::Zero();
};

enum class MprStatus {
  kConverged,       // portal/supporting-plane gap <= delta
  kShortcut,        // |z| <= |p|
  kStalled,         // candidate within 1e-12 of the portal plane
  kOnBoundary,      // origin on boundary(D); p = 0
  kIterationLimit,  // best effort after kMaxMprIters
};

const char* to_string(MprStatus status);

struct MprOutput {
  Vector3 p = Vector3::Zero();
  SupportPoint candidate;
  Vector3 d_portal = Vector3::UnitX();  // unit, outward
  Vector3 z = Vector3::Zero();
  int iterations = 0;
  MprStatus status = MprStatus::kConverged;
};

/// Per-iteration bounds, recorded when a trace is passed in.
struct MprStep {
  Vector3 p;
  Vector3 q;
  Vector3 z;
  Vector3 d_portal;
};
using MprTrace = std::vector<MprStep>;

/// Barycentric coordinates of the hit point of the origin ray along `ray`
/// with triangle (a, b, c); NaN components when the ray misses the
/// triangle's cone from the origin or the triangle is back-facing.
Vector3 ray_triangle_barycentric(const Vector3& a, const Vector3& b,
                                 const Vector3& c, const Vector3& ray);

/// Finds a portal crossed by the origin ray along d_ray: a cone walk from
/// the origin, falling back to a face of the GJK tetrahedron when the walk
/// does not settle. Requires the origin inside D; throws NotColliding when
/// a support plane proves otherwise.
Portal find_portal(MinkowskiDifference& diff, const Vector3& d_ray);

/// Ray / boundary intersection to tolerance delta (> 0).
MprOutput mpr_refine(MinkowskiDifference& diff, const Vector3& d_ray,
                     double delta, MprTrace* trace = nullptr);

/// Optional early exit for mpr_shortcut: the state already satisfies the
/// caller's convergence test (|z| - |p| <= gap_tol and
/// 1 - dot(ray, d_portal) <= direction_tol), so refining further cannot
/// change the caller's decision.
struct MprExit {
  double direction_tol;
  double gap_tol;
};

/// Same loop without a tolerance, returning at the first |z| <= |p|, or
/// with kConverged once `exit` holds.
MprOutput mpr_shortcut(MinkowskiDifference& diff, const Vector3& d_ray,
                       MprTrace* trace = nullptr,
                       const MprExit* exit = nullptr);

/// Boolean MPR: true iff the origin is in D (1e-9 boundary tolerance).
bool overlaps(MinkowskiDifference& diff);

/// overlaps() on a throwaway difference of the given shapes.
bool overlaps(const ConvexShape& shape1, const Pose& pose1,
              const ConvexShape& shape2, const Pose& pose2);

}  // namespace pdkit
