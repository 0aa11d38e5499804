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

#include "pdkit/baseline.hpp"

#include <cmath>
#include <limits>

namespace pdkit {
namespace {

constexpr double kContactTol = 1e-9;

// Closest point to the origin with a bitmask of the supporting vertices.
struct Closest {
  Vector3 point;
  unsigned mask;
};

Closest closest_segment(const Vector3& a, const Vector3& b) {
  const Vector3 ab = b - a;
  const double denom = ab.squaredNorm();
  const double t = denom > 0.0 ? -a.dot(ab) / denom : 0.0;
  if (t <= 0.0) return {a, 0b01};
  if (t >= 1.0) return {b, 0b10};
  return {a + t * ab, 0b11};
}

// Region-based closest point on a triangle (Ericson, RTCD 5.1.5).
Closest closest_triangle(const Vector3& a, const Vector3& b, const Vector3& c) {
  const Vector3 ab = b - a;
  const Vector3 ac = c - a;
  const double d1 = -ab.dot(a);
  const double d2 = -ac.dot(a);
  if (d1 <= 0.0 && d2 <= 0.0) return {a, 0b001};

  const double d3 = -ab.dot(b);
  const double d4 = -ac.dot(b);
  if (d3 >= 0.0 && d4 <= d3) return {b, 0b010};

  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
    return {a + d1 / (d1 - d3) * ab, 0b011};
  }

  const double d5 = -ab.dot(c);
  const double d6 = -ac.dot(c);
  if (d6 >= 0.0 && d5 <= d6) return {c, 0b100};

  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
    return {a + d2 / (d2 - d6) * ac, 0b101};
  }

  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
    const double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
    return {b + w * (c - b), 0b110};
  }

  const double denom = 1.0 / (va + vb + vc);
  return {a + ab * (vb * denom) + ac * (vc * denom), 0b111};
}

// True when the origin and d lie strictly on opposite sides of plane abc.
bool origin_outside_plane(const Vector3& a, const Vector3& b, const Vector3& c,
                          const Vector3& d) {
  const Vector3 n = (b - a).cross(c - a);
  const double sign_o = -a.dot(n);
  const double sign_d = (d - a).dot(n);
  return sign_o * sign_d < 0.0;
}

Closest closest_tetrahedron(const Simplex& s) {
  const Vector3& a = s[0].v;
  const Vector3& b = s[1].v;
  const Vector3& c = s[2].v;
  const Vector3& d = s[3].v;
  const double scale = std::max({a.norm(), b.norm(), c.norm(), d.norm(), 1e-300});
  const bool flat = std::abs(s.volume()) <= 1e-15 * scale * scale * scale;

  struct FaceIdx {
    int i, j, k, opposite;
  };
  constexpr FaceIdx faces[4] = {{0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2},
                                {1, 3, 2, 0}};
  Closest best{Vector3::Zero(), 0b1111};
  double best_d2 = std::numeric_limits<double>::infinity();
  bool any_outside = false;
  for (const FaceIdx& f : faces) {
    const Vector3& p = s[f.i].v;
    const Vector3& q = s[f.j].v;
    const Vector3& r = s[f.k].v;
    if (!flat && !origin_outside_plane(p, q, r, s[f.opposite].v)) continue;
    any_outside = true;
    const Closest c3 = closest_triangle(p, q, r);
    const double d2 = c3.point.squaredNorm();
    if (d2 < best_d2) {
      best_d2 = d2;
      unsigned mask = 0;
      if (c3.mask & 0b001) mask |= 1u << f.i;
      if (c3.mask & 0b010) mask |= 1u << f.j;
      if (c3.mask & 0b100) mask |= 1u << f.k;
      best = {c3.point, mask};
    }
  }
  if (!any_outside) return {Vector3::Zero(), 0b1111};
  return best;
}

void reduce(Simplex& s, unsigned mask) {
  Simplex out;
  for (int i = 0; i < s.size; ++i) {
    if (mask & (1u << i)) out.push(s[i]);
  }
  s = out;
}

// Grows a simplex with the origin on (or within tolerance of) it into a
// non-degenerate tetrahedron by supports along fresh directions.
void inflate(MinkowskiDifference& diff, Simplex& s) {
  double scale = 0.0;
  for (int i = 0; i < s.size; ++i) scale = std::max(scale, s[i].v.norm());
  scale = std::max(scale, 1e-12);
  const double eps = 1e-9 * scale;

  if (s.size == 1) {
    const Vector3 axes[6] = {Vector3::UnitX(),  -Vector3::UnitX(),
                             Vector3::UnitY(),  -Vector3::UnitY(),
                             Vector3::UnitZ(),  -Vector3::UnitZ()};
    for (const Vector3& d : axes) {
      const SupportPoint p = diff.support(d);
      if ((p.v - s[0].v).norm() > eps) {
        s.push(p);
        break;
      }
    }
  }
  if (s.size == 2) {
    const Vector3 u = (s[1].v - s[0].v).normalized();
    const Vector3 e1 = any_perpendicular(u);
    const Vector3 e2 = u.cross(e1);
    for (int k = 0; k < 6; ++k) {
      const double angle = k * M_PI / 3.0;
      const SupportPoint p =
          diff.support(std::cos(angle) * e1 + std::sin(angle) * e2);
      const Vector3 off = p.v - s[0].v;
      if ((off - off.dot(u) * u).norm() > eps) {
        s.push(p);
        break;
      }
    }
  }
  if (s.size == 3) {
    const Vector3 n = (s[1].v - s[0].v).cross(s[2].v - s[0].v).normalized();
    const SupportPoint up = diff.support(n);
    const SupportPoint down = diff.support(-n);
    const double h_up = std::abs((up.v - s[0].v).dot(n));
    const double h_down = std::abs((down.v - s[0].v).dot(n));
    s.push(h_up >= h_down ? up : down);
  }
  if (s.size != 4 || std::abs(s.volume()) <= 1e-18) {
    throw Error(ErrorCode::kDegenerateGeometry,
                "cannot inflate GJK simplex to a tetrahedron");
  }
}

}  // namespace

double Simplex::volume() const {
  if (size < 4) return 0.0;
  return (points[1].v - points[0].v)
             .dot((points[2].v - points[0].v).cross(points[3].v - points[0].v)) /
         6.0;
}

Vector3 closest_to_origin(Simplex& s) {
  Closest c{Vector3::Zero(), 0};
  switch (s.size) {
    case 1: c = {s[0].v, 0b1}; break;
    case 2: c = closest_segment(s[0].v, s[1].v); break;
    case 3: c = closest_triangle(s[0].v, s[1].v, s[2].v); break;
    case 4: c = closest_tetrahedron(s); break;
    default:
      throw Error(ErrorCode::kInvalidArgument, "empty simplex");
  }
  reduce(s, c.mask);
  return c.point;
}

GjkResult gjk(MinkowskiDifference& diff) {
  GjkResult result;
  Vector3 dir = -diff.interior_anchor();
  if (dir.norm() < kMinDirectionNorm) dir = Vector3::UnitX();

  Simplex& s = result.simplex;
  s.push(diff.support(dir));
  Vector3 v = s[0].v;

  for (int it = 0; it < kMaxGjkIters; ++it) {
    result.iterations = it + 1;
    const double v_norm = v.norm();
    if (v_norm <= kContactTol) {
      result.status = GjkStatus::kIntersecting;
      result.distance = v_norm;
      inflate(diff, s);
      return result;
    }
    const SupportPoint w = diff.support(-v);
    // a separating plane strictly beyond the tolerance
    if (w.v.dot(-v / v_norm) < -kContactTol) {
      result.distance = v_norm;
      return result;
    }
    // no progress toward the origin: v is the closest point of D
    bool duplicate = false;
    for (int i = 0; i < s.size; ++i) duplicate |= (s[i].v == w.v);
    if (duplicate || v_norm * v_norm - v.dot(w.v) <= 1e-12 * v_norm * v_norm) {
      result.distance = v_norm;
      return result;
    }
    s.push(w);
    v = closest_to_origin(s);
    if (s.size == 4) {
      result.status = GjkStatus::kIntersecting;
      result.distance = 0.0;
      return result;
    }
  }
  result.iteration_limit = true;
  result.distance = v.norm();
  return result;
}

}  // namespace pdkit
