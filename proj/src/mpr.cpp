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

#include "pdkit/mpr.hpp"

#include "pdkit/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>

namespace pdkit {
namespace {

constexpr double kTouchTol = 1e-12;
constexpr int kMaxDiscoveryIters = 8;
constexpr double kBoundaryTol = 1e-9;
constexpr double kStallTol = 1e-12;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double triple(const Vector3& a, const Vector3& b, const Vector3& c) {
  return a.dot(b.cross(c));
}

// Smallest barycentric coordinate of the ray hit, -inf on a miss.
double coverage(const Vector3& a, const Vector3& b, const Vector3& c,
                const Vector3& ray) {
  const Vector3 bary = ray_triangle_barycentric(a, b, c, ray);
  if (!bary.allFinite()) return -std::numeric_limits<double>::infinity();
  return bary.minCoeff();
}

// Unit outward portal normal. A collinear portal has no normal; nudge the
// raw cross product along the axis most aligned with the ray.
Vector3 portal_normal(const Portal& portal, const Vector3& ray) {
  const Vector3& a = portal.s[0].v;
  Vector3 n = (portal.s[1].v - a).cross(portal.s[2].v - a);
  if (n.norm() < 1e-12) {
    Eigen::Index axis;
    ray.cwiseAbs().maxCoeff(&axis);
    Vector3 e = Vector3::Zero();
    e[axis] = ray[axis] >= 0.0 ? 1.0 : -1.0;
    n += 1e-8 * e;
  }
  if (n.dot(ray) < 0.0) n = -n;
  return n.normalized();
}

// Replaces one portal vertex by the candidate so the ray still crosses the
// portal: try s1, then s2, then s3 and keep the first hit.
void update_portal(Portal& portal, const SupportPoint& candidate,
                   const Vector3& ray) {
  int best_slot = 0;
  double best_cov = -std::numeric_limits<double>::infinity();
  for (int slot = 0; slot < 3; ++slot) {
    std::array<Vector3, 3> tri = {portal.s[0].v, portal.s[1].v, portal.s[2].v};
    tri[slot] = candidate.v;
    const double cov = coverage(tri[0], tri[1], tri[2], ray);
    if (cov >= -kBoundaryTol) {
      portal.s[slot] = candidate;
      return;
    }
    if (cov > best_cov) {
      best_cov = cov;
      best_slot = slot;
    }
  }
  portal.s[best_slot] = candidate;
}

struct Frame {
  Vector3 normal;
  SupportPoint candidate;
  double plane;      // dot(normal, portal)
  double candidate_h;  // dot(normal, candidate)
  double t_p;
  double t_q;
};

Frame evaluate(MinkowskiDifference& diff, const Portal& portal,
               const Vector3& ray) {
  Frame f;
  f.normal = portal_normal(portal, ray);
  f.candidate = diff.support(f.normal);
  f.plane = (portal.s[0].v + portal.s[1].v + portal.s[2].v).dot(f.normal) / 3.0;
  f.candidate_h = f.candidate.v.dot(f.normal);
  const double cos_r = f.normal.dot(ray);
  if (!(cos_r > 0.0)) {
    throw Error(ErrorCode::kDegenerateGeometry,
                "portal plane is parallel to the ray");
  }
  f.t_p = f.plane / cos_r;
  f.t_q = f.candidate_h / cos_r;
  return f;
}

MprOutput make_output(const Frame& f, const Vector3& ray, int iterations,
                      MprStatus status) {
  MprOutput out;
  out.p = f.t_p * ray;
  out.candidate = f.candidate;
  out.d_portal = f.normal;
  out.z = f.candidate_h * f.normal;
  out.iterations = iterations;
  out.status = status;
  return out;
}

MprOutput touching_output(const Portal& portal) {
  MprOutput out;
  out.p = Vector3::Zero();
  out.candidate = portal.s[0];
  out.d_portal = portal.touch_normal;
  out.z = std::max(0.0, portal.s[0].v.dot(portal.touch_normal)) *
          portal.touch_normal;
  out.iterations = 0;
  out.status = MprStatus::kOnBoundary;
  return out;
}

template <class StopRule>
MprOutput run_mpr(MinkowskiDifference& diff, const Vector3& d_ray,
                  MprTrace* trace, StopRule stop) {
  const Vector3 ray = normalized_direction(d_ray);
  Portal portal = find_portal(diff, ray);
  if (portal.touching) return touching_output(portal);

  Frame f;
  for (int it = 0; it < kMaxMprIters; ++it) {
    f = evaluate(diff, portal, ray);
    if (trace != nullptr) {
      trace->push_back({f.t_p * ray, f.t_q * ray, f.candidate_h * f.normal,
                        f.normal});
    }
    if (auto status = stop(f)) return make_output(f, ray, it + 1, *status);
    update_portal(portal, f.candidate, ray);
  }
  return make_output(f, ray, kMaxMprIters, MprStatus::kIterationLimit);
}

// Fallback when the cone walk does not settle (the origin close to
// boundary(D) makes the cone from the origin nearly a half-space). GJK
// yields a tetrahedron of support points holding the origin; the face the
// ray leaves through is a valid portal. When the origin sits on a face the
// ray points out of, that face is pushed out along its normal first.
Portal portal_from_tetrahedron(MinkowskiDifference& diff, const Vector3& ray,
                               const Vector3& anchor) {
  const GjkResult g = gjk(diff);
  if (g.status != GjkStatus::kIntersecting) {
    throw Error(ErrorCode::kNotColliding,
                "origin is outside the Minkowski difference");
  }
  std::array<SupportPoint, 4> t = g.simplex.points;
  constexpr int kFaces[4][4] = {
      {0, 1, 2, 3}, {0, 1, 3, 2}, {0, 2, 3, 1}, {1, 2, 3, 0}};
  Portal portal;
  portal.anchor = anchor;

  for (int it = 0; it < kMaxPortalIters; ++it) {
    double scale = 0.0;
    for (const SupportPoint& p : t) scale = std::max(scale, p.v.norm());
    double best_t = std::numeric_limits<double>::infinity();
    double best_along = 0.0;
    int best = -1;
    Vector3 best_n = Vector3::Zero();
    for (int f = 0; f < 4; ++f) {
      const Vector3& a = t[kFaces[f][0]].v;
      Vector3 n = (t[kFaces[f][1]].v - a).cross(t[kFaces[f][2]].v - a);
      const double n_norm = n.norm();
      if (!(n_norm > 0.0)) continue;
      n /= n_norm;
      if (n.dot(t[kFaces[f][3]].v - a) > 0.0) n = -n;
      const double along = n.dot(ray);
      if (!(along > 0.0)) continue;
      const double hit = std::max(0.0, n.dot(a)) / along;
      if (hit < best_t || (hit == best_t && along > best_along)) {
        best_t = hit;
        best_along = along;
        best = f;
        best_n = n;
      }
    }
    if (best < 0) {
      throw Error(ErrorCode::kDegenerateGeometry,
                  "ray leaves no face of the GJK tetrahedron");
    }
    const auto& f = kFaces[best];
    if (best_t * best_along > kTouchTol * std::max(1.0, scale)) {
      portal.s = {t[f[0]], t[f[1]], t[f[2]]};
      if (triple(portal.s[0].v, portal.s[1].v, portal.s[2].v) < 0.0) {
        std::swap(portal.s[1], portal.s[2]);
      }
      return portal;
    }
    // The origin lies on this face and the ray points out of it.
    const SupportPoint w = diff.support(best_n);
    if (w.v.dot(best_n) <= kTouchTol) {
      portal.touching = true;
      portal.touch_normal = best_n;
      portal.s = {w, w, w};
      return portal;
    }
    t[f[3]] = w;
  }
  throw Error(ErrorCode::kIterationLimit, "find_portal did not converge");
}

}  // namespace

const char* to_string(MprStatus status) {
  switch (status) {
    case MprStatus::kConverged: return "Converged";
    case MprStatus::kShortcut: return "Shortcut";
    case MprStatus::kStalled: return "Stalled";
    case MprStatus::kOnBoundary: return "OnBoundary";
    case MprStatus::kIterationLimit: return "IterationLimit";
  }
  return "Unknown";
}

Vector3 ray_triangle_barycentric(const Vector3& a, const Vector3& b,
                                 const Vector3& c, const Vector3& ray) {
  const Vector3 miss(kNaN, kNaN, kNaN);
  const double det = triple(a, b, c);
  if (!(det > 0.0)) return miss;
  const Vector3 lambda(triple(ray, b, c), triple(a, ray, c),
                       triple(a, b, ray));
  const double sum = lambda.sum();
  if (!(sum > 0.0)) return miss;
  return lambda / sum;
}

Portal find_portal(MinkowskiDifference& diff, const Vector3& d_ray) {
  const Vector3 ray = normalized_direction(d_ray);
  Portal portal;
  portal.anchor = diff.interior_anchor();

  // Support along a unit direction; false once the origin is found on the
  // boundary with that direction as outward normal.
  auto probe = [&](const Vector3& dir, SupportPoint& out) {
    out = diff.support(dir);
    const double h = out.v.dot(dir);
    if (h < -kBoundaryTol) {
      throw Error(ErrorCode::kNotColliding,
                  "origin is outside the Minkowski difference");
    }
    if (h <= kTouchTol) {
      portal.touching = true;
      portal.touch_normal = dir;
      portal.s = {out, out, out};
      return false;
    }
    return true;
  };

  SupportPoint s1, s2, s3;
  if (!probe(ray, s1)) return portal;

  // Second vertex off the plane spanned by the ray and s1.
  Vector3 dir = s1.v.cross(ray);
  if (dir.norm() <= 1e-12 * s1.v.norm()) dir = any_perpendicular(ray);
  if (!probe(dir.normalized(), s2)) return portal;

  // Orient the pair so the ray lies on the positive side of plane(O, s1, s2).
  dir = s1.v.cross(s2.v);
  if (dir.dot(ray) < 0.0) {
    std::swap(s1, s2);
    dir = -dir;
  }

  for (int it = 0; it < kMaxDiscoveryIters; ++it) {
    const double dir_norm = dir.norm();
    if (!(dir_norm > 0.0)) {
      throw Error(ErrorCode::kDegenerateGeometry,
                  "portal vertices are collinear with the origin");
    }
    if (!probe(dir / dir_norm, s3)) return portal;

    // The ray must lie inside all three wedges of the cone O-(s1, s2, s3).
    const double eps = 1e-14 * s3.v.norm() *
                       std::max(s1.v.norm(), s2.v.norm());
    if (s1.v.cross(s3.v).dot(ray) > eps) {
      s2 = s3;
    } else if (s3.v.cross(s2.v).dot(ray) > eps) {
      s1 = s3;
    } else {
      portal.s = {s1, s2, s3};
      return portal;
    }
    dir = s1.v.cross(s2.v);
  }
  return portal_from_tetrahedron(diff, ray, portal.anchor);
}

MprOutput mpr_refine(MinkowskiDifference& diff, const Vector3& d_ray,
                     double delta, MprTrace* trace) {
  if (!(delta > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "mpr tolerance must be positive");
  }
  return run_mpr(diff, d_ray, trace,
                 [delta](const Frame& f) -> std::optional<MprStatus> {
                   if (f.candidate_h - f.plane <= delta) {
                     return MprStatus::kConverged;
                   }
                   return std::nullopt;
                 });
}

MprOutput mpr_shortcut(MinkowskiDifference& diff, const Vector3& d_ray,
                       MprTrace* trace, const MprExit* exit) {
  const Vector3 ray = normalized_direction(d_ray);
  return run_mpr(diff, ray, trace,
                 [&ray, exit](const Frame& f) -> std::optional<MprStatus> {
                   // |z| = candidate_h, |p| = t_p
                   if (f.candidate_h <= f.t_p) return MprStatus::kShortcut;
                   if (f.candidate_h - f.plane <= kStallTol) {
                     return MprStatus::kStalled;
                   }
                   if (exit != nullptr &&
                       f.candidate_h - f.t_p <= exit->gap_tol &&
                       1.0 - f.normal.dot(ray) <= exit->direction_tol) {
                     return MprStatus::kConverged;
                   }
                   return std::nullopt;
                 });
}

bool overlaps(MinkowskiDifference& diff) {
  // Classic MPR intersection test with the interior anchor as portal center.
  const Vector3 v0 = diff.interior_anchor();
  if (v0.norm() < 1e-12) return true;

  Vector3 dir = -v0.normalized();
  SupportPoint v1 = diff.support(dir);
  if (v1.v.dot(dir) < -kBoundaryTol) return false;

  dir = v0.cross(v1.v);
  if (dir.norm() <= 1e-12 * v0.norm() * std::max(1.0, v1.v.norm())) {
    // origin on the segment v0-v1
    return true;
  }
  dir.normalize();
  SupportPoint v2 = diff.support(dir);
  if (v2.v.dot(dir) < -kBoundaryTol) return false;

  auto face_dir = [&](const SupportPoint& a, const SupportPoint& b) {
    const Vector3 n = (a.v - v0).cross(b.v - v0);
    const double len = n.norm();
    return len > 0.0 ? Vector3(n / len) : Vector3(-v0.normalized());
  };

  dir = face_dir(v1, v2);
  if (dir.dot(v0) > 0.0) {
    std::swap(v1, v2);
    dir = -dir;
  }

  SupportPoint v3;
  bool found = false;
  for (int it = 0; it < kMaxPortalIters; ++it) {
    v3 = diff.support(dir);
    if (v3.v.dot(dir) < -kBoundaryTol) return false;
    const double eps = 1e-14 * v0.norm() * v3.v.norm() *
                       std::max(v1.v.norm(), v2.v.norm());
    if (v1.v.cross(v3.v).dot(v0) < -eps) {
      v2 = v3;
    } else if (v3.v.cross(v2.v).dot(v0) < -eps) {
      v1 = v3;
    } else {
      found = true;
      break;
    }
    dir = face_dir(v1, v2);
  }
  if (!found) return false;

  Vector3 n;
  for (int it = 0; it < kMaxMprIters; ++it) {
    n = (v2.v - v1.v).cross(v3.v - v1.v);
    if (n.norm() < 1e-12) {
      Eigen::Index axis;
      v0.cwiseAbs().maxCoeff(&axis);
      Vector3 e = Vector3::Zero();
      e[axis] = v0[axis] >= 0.0 ? -1.0 : 1.0;
      n += 1e-8 * e;
    }
    n.normalize();
    const double portal_h = n.dot(v1.v);
    if (portal_h >= 0.0) return true;

    const SupportPoint v4 = diff.support(n);
    const double h4 = v4.v.dot(n);
    if (h4 < -kBoundaryTol) return false;
    const double gap = std::min({h4 - portal_h, h4 - n.dot(v2.v),
                                 h4 - n.dot(v3.v)});
    if (gap <= kStallTol) return portal_h >= -kBoundaryTol;

    // keep the sub-portal the ray v0 -> O still crosses
    const Vector3 v4v0 = v4.v.cross(v0);
    if (v1.v.dot(v4v0) > 0.0) {
      if (v2.v.dot(v4v0) > 0.0) {
        v1 = v4;
      } else {
        v3 = v4;
      }
    } else {
      if (v3.v.dot(v4v0) > 0.0) {
        v2 = v4;
      } else {
        v1 = v4;
      }
    }
  }
  return n.dot(v1.v) >= -kBoundaryTol;
}

bool overlaps(const ConvexShape& shape1, const Pose& pose1,
              const ConvexShape& shape2, const Pose& pose2) {
  MinkowskiDifference diff(shape1, pose1, shape2, pose2);
  return overlaps(diff);
}

}  // namespace pdkit
