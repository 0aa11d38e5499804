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

#include "pdkit/oracle.hpp"

#include "pdkit/mpr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace pdkit {
namespace {

struct Core {
  Vector3 a;
  Vector3 b;
  double radius;
};

Core core_of(const ConvexShape& shape, const Pose& pose) {
  if (const auto* s = std::get_if<Sphere>(&shape.geometry())) {
    const Vector3 c = pose.translation();
    return {c, c, s->radius};
  }
  if (const auto* c = std::get_if<Capsule>(&shape.geometry())) {
    const Vector3 half = pose.rotate(Vector3(0.0, 0.0, c->half_length));
    return {pose.translation() - half, pose.translation() + half, c->radius};
  }
  throw Error(ErrorCode::kInvalidShape,
              "analytic oracle supports spheres and capsules only");
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

double core_distance(const Core& c1, const Core& c2, const Vector3& shift) {
  const auto [p, q] =
      closest_segment_points(c1.a, c1.b, c2.a + shift, c2.b + shift);
  return (p - q).norm();
}

}  // namespace

// Clamped quadratic minimization (Ericson, RTCD 5.1.9).
std::pair<Vector3, Vector3> closest_segment_points(const Vector3& p0,
                                                   const Vector3& p1,
                                                   const Vector3& q0,
                                                   const Vector3& q1) {
  constexpr double kEps = 1e-24;
  const Vector3 d1 = p1 - p0;
  const Vector3 d2 = q1 - q0;
  const Vector3 r = p0 - q0;
  const double a = d1.squaredNorm();
  const double e = d2.squaredNorm();
  const double f = d2.dot(r);
  double s = 0.0;
  double t = 0.0;
  if (a <= kEps && e <= kEps) return {p0, q0};
  if (a <= kEps) {
    t = clamp01(f / e);
  } else {
    const double c = d1.dot(r);
    if (e <= kEps) {
      s = clamp01(-c / a);
    } else {
      const double b = d1.dot(d2);
      const double denom = a * e - b * b;
      // parallel segments: start from an endpoint and project
      s = denom > 1e-12 * a * e ? clamp01((b * f - c * e) / denom) : 0.0;
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = clamp01(-c / a);
      } else if (t > 1.0) {
        t = 1.0;
        s = clamp01((b - c) / a);
      }
    }
  }
  return {p0 + s * d1, q0 + t * d2};
}

AnalyticPD analytic_pd(const ConvexShape& shape1, const Pose& pose1,
                       const ConvexShape& shape2, const Pose& pose2) {
  const Core c1 = core_of(shape1, pose1);
  const Core c2 = core_of(shape2, pose2);
  const auto [p, q] = closest_segment_points(c1.a, c1.b, c2.a, c2.b);
  const Vector3 gap = p - q;
  const double dist = gap.norm();
  AnalyticPD out;
  out.depth = c1.radius + c2.radius - dist;
  if (!(out.depth > 0.0)) {
    throw Error(ErrorCode::kNotColliding, "shapes do not overlap");
  }
  if (dist < kMinDirectionNorm) {
    out.degenerate = true;
  } else {
    out.direction = gap / dist;
  }
  return out;
}

bool rounded_difference_contains(const ConvexShape& shape1, const Pose& pose1,
                                 const ConvexShape& shape2, const Pose& pose2,
                                 const Vector3& x) {
  const Core c1 = core_of(shape1, pose1);
  const Core c2 = core_of(shape2, pose2);
  return core_distance(c1, c2, x) <= c1.radius + c2.radius;
}

double rounded_ray_boundary(const ConvexShape& shape1, const Pose& pose1,
                            const ConvexShape& shape2, const Pose& pose2,
                            const Vector3& u) {
  const Core c1 = core_of(shape1, pose1);
  const Core c2 = core_of(shape2, pose2);
  const double reach = c1.radius + c2.radius;
  if (core_distance(c1, c2, Vector3::Zero()) > reach) {
    throw Error(ErrorCode::kNotColliding, "origin is outside the difference");
  }
  const Vector3 dir = normalized_direction(u);
  double lo = 0.0;
  double hi = (c1.a - c2.a).norm() + (c1.b - c1.a).norm() +
              (c2.b - c2.a).norm() + reach + 1.0;
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (core_distance(c1, c2, mid * dir) <= reach) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<Vector3> sphere_directions(int n) {
  // R2 sequence (plastic number) mapped area-preservingly onto the sphere.
  constexpr double g = 1.32471795724474602596;
  std::vector<Vector3> dirs;
  dirs.reserve(std::max(n, 0));
  for (int i = 0; i < n; ++i) {
    const double u = std::fmod(0.5 + i / g, 1.0);
    const double w = std::fmod(0.5 + i / (g * g), 1.0);
    const double z = 1.0 - 2.0 * u;
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = 2.0 * M_PI * w;
    dirs.emplace_back(rho * std::cos(phi), rho * std::sin(phi), z);
  }
  return dirs;
}

double brute_force_pd(MinkowskiDifference& diff, int n_dirs, int threads) {
  if (n_dirs < 1 || threads < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "brute_force_pd needs n_dirs >= 1 and threads >= 1");
  }
  if (!overlaps(diff)) {
    throw Error(ErrorCode::kNotColliding, "origin is outside the difference");
  }
  const std::vector<Vector3> dirs = sphere_directions(n_dirs);
  threads = std::min(threads, n_dirs);
  std::vector<double> best(threads, std::numeric_limits<double>::infinity());
  std::vector<std::int64_t> calls(threads, 0);

  auto worker = [&](int id) {
    MinkowskiDifference local(diff.shape1(), diff.pose1(), diff.shape2(),
                              diff.pose2());
    for (int i = id; i < n_dirs; i += threads) {
      try {
        const MprOutput out = mpr_refine(local, dirs[i], 1e-9);
        // |q|: the ray meets the supporting plane of the last candidate
        const double cos = out.d_portal.dot(dirs[i]);
        const double q_norm = out.candidate.v.dot(out.d_portal) / cos;
        best[id] = std::min(best[id], std::max(q_norm, out.p.norm()));
      } catch (const Error&) {
        // a direction that cannot be refined contributes nothing
      }
    }
    calls[id] = local.support_calls();
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int id = 0; id < threads; ++id) pool.emplace_back(worker, id);
    for (std::thread& t : pool) t.join();
  }
  double result = std::numeric_limits<double>::infinity();
  for (int id = 0; id < threads; ++id) {
    result = std::min(result, best[id]);
    diff.add_support_calls(calls[id]);
  }
  if (!std::isfinite(result)) {
    throw Error(ErrorCode::kDegenerateGeometry, "no direction could be refined");
  }
  return result;
}

}  // namespace pdkit
