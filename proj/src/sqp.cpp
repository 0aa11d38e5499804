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

#include "pdkit/sqp.hpp"

#include <cmath>
#include <limits>

namespace pdkit {

const char* to_string(PdStatus status) {
  switch (status) {
    case PdStatus::kConverged: return "Converged";
    case PdStatus::kIterationLimit: return "IterationLimit";
    case PdStatus::kNotColliding: return "NotColliding";
    case PdStatus::kDegenerate: return "Degenerate";
  }
  return "Unknown";
}

void set_boundary_point(PDResult& result, const Vector3& v_star,
                        const Vector3& fallback) {
  result.v_star = v_star;
  result.depth = v_star.norm();
  result.direction =
      result.depth > 0.0 ? Vector3(-v_star / result.depth) : Vector3(-fallback);
}

void SqpConfig::validate() const {
  if (max_sqp_iters <= 0 || !(direction_tol > 0.0) || !(gap_tol > 0.0) ||
      !(delta > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "sqp config values must be strictly positive");
  }
}

bool should_terminate(const Vector3& p, const Vector3& z,
                      const Vector3& d_portal, const SqpConfig& config) {
  const double p_norm = p.norm();
  if (z.norm() - p_norm > config.gap_tol) return false;
  if (p_norm < kMinDirectionNorm) return true;
  return 1.0 - (p / p_norm).dot(d_portal) <= config.direction_tol;
}

Vector3 init_direction(const MinkowskiDifference& diff,
                       const std::optional<Vector3>& warm_start) {
  if (warm_start && warm_start->norm() > kMinDirectionNorm) {
    return warm_start->normalized();
  }
  const Vector3 anchor = diff.interior_anchor();
  if (anchor.norm() > kMinDirectionNorm) return -anchor.normalized();
  return Vector3::UnitX();
}

Vector3 ellipsoid_ray_boundary(const ConvexShape& ellipsoid, const Pose& pose,
                               const Vector3& dir) {
  const Vector3 u = normalized_direction(dir);
  if (ellipsoid_level(ellipsoid, pose, Vector3::Zero()) >= 0.0) {
    throw Error(ErrorCode::kNotColliding, "origin is not inside the ellipsoid");
  }
  double lo = 0.0;
  double hi = pose.translation().norm() + ellipsoid.circumscribed_radius();
  while (ellipsoid_level(ellipsoid, pose, hi * u) <= 0.0) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (ellipsoid_level(ellipsoid, pose, mid * u) <= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi) * u;
}

PDResult sqp_explicit(const ConvexShape& ellipsoid, const Pose& pose,
                      const Vector3& v_init, const SqpConfig& config,
                      std::vector<Vector3>* iterates) {
  config.validate();
  PDResult result;
  if (ellipsoid_level(ellipsoid, pose, Vector3::Zero()) >= 0.0) {
    result.status = PdStatus::kNotColliding;
    return result;
  }
  boundary_normal(ellipsoid, pose, v_init);  // validates v_init

  Vector3 v = ellipsoid_ray_boundary(ellipsoid, pose, v_init);
  result.status = PdStatus::kIterationLimit;
  for (int k = 0; k < config.max_sqp_iters; ++k) {
    if (iterates != nullptr) iterates->push_back(v);
    result.sqp_iterations = k + 1;
    const Vector3 n = boundary_normal(ellipsoid, pose, v);
    // v_{k+1} is parallel to n, so this is the direction change.
    if (1.0 - v.normalized().dot(n) <= config.direction_tol) {
      result.status = PdStatus::kConverged;
      break;
    }
    const Vector3 y = v.dot(n) * n;  // origin projected on the tangent plane
    v = ellipsoid_ray_boundary(ellipsoid, pose, y);
  }
  set_boundary_point(result, v, Vector3::UnitX());
  result.witness1 = v;
  result.witness2 = Vector3::Zero();
  return result;
}

namespace {

template <class Subroutine>
PDResult run_sqp(MinkowskiDifference& diff, const Vector3& d_init,
                 const SqpConfig& config, SqpTrace* trace, Subroutine mpr) {
  config.validate();
  const std::int64_t calls_before = diff.support_calls();
  Vector3 d = normalized_direction(d_init);

  PDResult result;
  double best_norm = std::numeric_limits<double>::infinity();
  MprOutput best;
  auto finish = [&](const MprOutput& out, PdStatus status) {
    set_boundary_point(result, out.z, out.d_portal);
    result.witness1 = out.candidate.w1;
    result.witness2 = out.candidate.w2;
    result.status = status;
    result.support_calls = diff.support_calls() - calls_before;
    return result;
  };

  for (int k = 0; k < config.max_sqp_iters; ++k) {
    MprOutput out;
    try {
      out = mpr(diff, d);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kNotColliding) {
        result = PDResult{};
        result.status = PdStatus::kNotColliding;
        result.sqp_iterations = k;
        result.support_calls = diff.support_calls() - calls_before;
        return result;
      }
      if (!std::isfinite(best_norm)) throw;
      return finish(best, PdStatus::kDegenerate);
    }
    result.sqp_iterations = k + 1;
    if (trace != nullptr) {
      trace->push_back({out.p, out.z, out.d_portal, out.iterations, out.status});
    }
    const double z_norm = out.z.norm();
    if (z_norm < best_norm) {
      best_norm = z_norm;
      best = out;
    }
    if (out.status == MprStatus::kOnBoundary ||
        should_terminate(out.p, out.z, out.d_portal, config)) {
      return finish(out, PdStatus::kConverged);
    }
    d = out.d_portal;
  }
  // Smallest upper bound seen keeps the overestimate guarantee.
  return finish(best, PdStatus::kIterationLimit);
}

}  // namespace

PDResult pd_sqp_fixed_tol(MinkowskiDifference& diff, const Vector3& d_init,
                          const SqpConfig& config, SqpTrace* trace) {
  const double delta = config.delta;
  return run_sqp(diff, d_init, config, trace,
                 [delta](MinkowskiDifference& D, const Vector3& d) {
                   return mpr_refine(D, d, delta);
                 });
}

PDResult pd_sqp(MinkowskiDifference& diff, const Vector3& d_init,
                const SqpConfig& config, SqpTrace* trace) {
  const MprExit exit{config.direction_tol, config.gap_tol};
  return run_sqp(diff, d_init, config, trace,
                 [exit](MinkowskiDifference& D, const Vector3& d) {
                   return mpr_shortcut(D, d, nullptr, &exit);
                 });
}

}  // namespace pdkit
