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

#include "pdkit/shapes.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace pdkit {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool positive(double x) { return std::isfinite(x) && x > 0.0; }

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::kInvalidShape, what);
}

// Lowest index among vertices whose dot with d is within a relative 1e-12
// of the maximum.
Vector3 polytope_support(const ConvexPolytope& p, const Vector3& d) {
  const auto& vs = p.vertices;
  double best = -std::numeric_limits<double>::infinity();
  for (const Vector3& v : vs) best = std::max(best, v.dot(d));
  const double cutoff = best - 1e-12 * std::max(1.0, std::abs(best));
  for (const Vector3& v : vs) {
    if (v.dot(d) >= cutoff) return v;
  }
  return vs.front();
}

}  // namespace

const char* to_string(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::kSphere: return "sphere";
    case ShapeKind::kCapsule: return "capsule";
    case ShapeKind::kBox: return "box";
    case ShapeKind::kPolytope: return "polytope";
    case ShapeKind::kEllipsoid: return "ellipsoid";
  }
  return "unknown";
}

ConvexShape make_sphere(double radius) {
  require(positive(radius), "sphere radius must be positive");
  return ConvexShape(Sphere{radius});
}

ConvexShape make_capsule(double half_length, double radius) {
  require(positive(half_length) && positive(radius),
          "capsule half_length and radius must be positive");
  return ConvexShape(Capsule{half_length, radius});
}

ConvexShape make_box(const Vector3& half_extents) {
  require(positive(half_extents.x()) && positive(half_extents.y()) &&
              positive(half_extents.z()),
          "box half extents must be positive");
  return ConvexShape(Box{half_extents});
}

ConvexShape make_ellipsoid(const Vector3& semi_axes) {
  require(positive(semi_axes.x()) && positive(semi_axes.y()) &&
              positive(semi_axes.z()),
          "ellipsoid semi axes must be positive");
  return ConvexShape(LevelSetEllipsoid{semi_axes});
}

ConvexShape make_polytope(std::vector<Vector3> vertices) {
  require(vertices.size() >= 4, "polytope needs at least 4 vertices");
  for (const Vector3& v : vertices) {
    require(v.allFinite(), "polytope vertex is not finite");
  }

  // Greedy affine-independence check: farthest point, farthest from the
  // line, farthest from the plane.
  const Vector3& a = vertices.front();
  double scale = 0.0;
  const Vector3* b = &a;
  for (const Vector3& v : vertices) {
    const double dist = (v - a).norm();
    if (dist > scale) {
      scale = dist;
      b = &v;
    }
  }
  require(scale > 1e-12, "polytope vertices are coincident");
  const Vector3 axis = (*b - a) / scale;
  const Vector3* c = &a;
  double best = 0.0;
  for (const Vector3& v : vertices) {
    const double dist = (v - a - (v - a).dot(axis) * axis).norm();
    if (dist > best) {
      best = dist;
      c = &v;
    }
  }
  require(best > 1e-9 * scale, "polytope vertices are collinear");
  const Vector3 normal = (*b - a).cross(*c - a).normalized();
  best = 0.0;
  for (const Vector3& v : vertices) {
    best = std::max(best, std::abs((v - a).dot(normal)));
  }
  require(best > 1e-9 * scale, "polytope vertices are coplanar");

  Vector3 centroid = Vector3::Zero();
  for (const Vector3& v : vertices) centroid += v;
  centroid /= static_cast<double>(vertices.size());
  return ConvexShape(ConvexPolytope{std::move(vertices), centroid});
}

Vector3 ConvexShape::local_support(const Vector3& d) const {
  return std::visit(
      Overloaded{
          [&](const Sphere& s) -> Vector3 { return s.radius * d; },
          [&](const Capsule& c) -> Vector3 {
            const double z = d.z() >= 0.0 ? c.half_length : -c.half_length;
            return Vector3(0.0, 0.0, z) + c.radius * d;
          },
          [&](const Box& b) -> Vector3 {
            return Vector3(d.x() >= 0.0 ? b.half_extents.x() : -b.half_extents.x(),
                           d.y() >= 0.0 ? b.half_extents.y() : -b.half_extents.y(),
                           d.z() >= 0.0 ? b.half_extents.z() : -b.half_extents.z());
          },
          [&](const ConvexPolytope& p) -> Vector3 {
            return polytope_support(p, d);
          },
          [&](const LevelSetEllipsoid& e) -> Vector3 {
            // argmax of d.x over the ellipsoid is A^2 d / |A d|
            const Vector3 ad = e.semi_axes.cwiseProduct(d);
            return e.semi_axes.cwiseProduct(ad) / ad.norm();
          },
      },
      geometry_);
}

Vector3 ConvexShape::local_interior_point() const {
  if (const auto* p = std::get_if<ConvexPolytope>(&geometry_)) {
    return p->centroid;
  }
  return Vector3::Zero();
}

double ConvexShape::circumscribed_radius() const {
  return std::visit(
      Overloaded{
          [](const Sphere& s) { return s.radius; },
          [](const Capsule& c) { return c.half_length + c.radius; },
          [](const Box& b) { return b.half_extents.norm(); },
          [](const ConvexPolytope& p) {
            double r = 0.0;
            for (const Vector3& v : p.vertices) {
              r = std::max(r, (v - p.centroid).norm());
            }
            return r;
          },
          [](const LevelSetEllipsoid& e) { return e.semi_axes.maxCoeff(); },
      },
      geometry_);
}

bool ConvexShape::is_rounded() const {
  return kind() == ShapeKind::kSphere || kind() == ShapeKind::kCapsule;
}

ConvexShape ConvexShape::shrunk(double amount) const {
  if (const auto* s = std::get_if<Sphere>(&geometry_)) {
    return make_sphere(s->radius - amount);
  }
  if (const auto* c = std::get_if<Capsule>(&geometry_)) {
    return make_capsule(c->half_length, c->radius - amount);
  }
  throw Error(ErrorCode::kInvalidShape, "only rounded shapes can be shrunk");
}

Vector3 support(const ConvexShape& shape, const Pose& pose, const Vector3& d) {
  const Vector3 unit = normalized_direction(d);
  return pose.apply(shape.local_support(pose.inverse_rotate(unit)));
}

Vector3 interior_point(const ConvexShape& shape, const Pose& pose) {
  return pose.apply(shape.local_interior_point());
}

double ellipsoid_level(const ConvexShape& shape, const Pose& pose,
                       const Vector3& x) {
  const auto* e = std::get_if<LevelSetEllipsoid>(&shape.geometry());
  if (e == nullptr) {
    throw Error(ErrorCode::kInvalidShape, "shape is not a level-set ellipsoid");
  }
  return pose.inverse_apply(x).cwiseQuotient(e->semi_axes).squaredNorm() - 1.0;
}

Vector3 boundary_normal(const ConvexShape& shape, const Pose& pose,
                        const Vector3& v) {
  const auto* e = std::get_if<LevelSetEllipsoid>(&shape.geometry());
  if (e == nullptr) {
    throw Error(ErrorCode::kInvalidShape, "shape is not a level-set ellipsoid");
  }
  const Vector3 local = pose.inverse_apply(v);
  const Vector3 inv_sq = e->semi_axes.cwiseProduct(e->semi_axes).cwiseInverse();
  const double g = local.cwiseProduct(local).dot(inv_sq) - 1.0;
  const Vector3 grad = 2.0 * local.cwiseProduct(inv_sq);
  const double grad_norm = grad.norm();
  // first-order distance to the zero level set
  if (!(grad_norm > 0.0) || std::abs(g) / grad_norm > 1e-6) {
    throw Error(ErrorCode::kPointNotOnBoundary,
                "point is not on the ellipsoid boundary");
  }
  return pose.rotate(grad / grad_norm);
}

std::vector<Vector3> parse_polytope_vertices(std::istream& in) {
  std::vector<Vector3> vertices;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (tag != "v") continue;
    double x, y, z;
    if (!(ls >> x >> y >> z)) {
      throw Error(ErrorCode::kParse,
                  "malformed vertex on line " + std::to_string(line_no));
    }
    vertices.emplace_back(x, y, z);
  }
  return vertices;
}

ConvexShape load_polytope(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return make_polytope(parse_polytope_vertices(in));
}

}  // namespace pdkit
