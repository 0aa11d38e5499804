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

// Convex primitives described by their support mappings.
//
// Every shape is defined in its local frame and placed in the world by a
// Pose. support() returns the extreme point along +d (the point maximizing
// dot(x, d)); ties are broken deterministically so benchmark runs replay
// bit for bit.

#pragma once

#include "pdkit/types.hpp"

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace pdkit {

struct Sphere {
  double radius;
};

/// Segment of length 2*half_length along the local z axis, swept by a ball.
struct Capsule {
  double half_length;
  double radius;
};

struct Box {
  Vector3 half_extents;
};

struct ConvexPolytope {
  std::vector<Vector3> vertices;
  Vector3 centroid = Vector3::Zero();  // vertex mean, filled on construction
};

/// {x : sum_i (x_i / a_i)^2 <= 1} in the local frame.
struct LevelSetEllipsoid {
  Vector3 semi_axes;
};

enum class ShapeKind { kSphere, kCapsule, kBox, kPolytope, kEllipsoid };

const char* to_string(ShapeKind kind);

/// Immutable validated shape. Construct through the make_* factories.
class ConvexShape {
 public:
  using Variant =
      std::variant<Sphere, Capsule, Box, ConvexPolytope, LevelSetEllipsoid>;

  ShapeKind kind() const { return static_cast<ShapeKind>(geometry_.index()); }
  const Variant& geometry() const { return geometry_; }

  /// Extreme point in the local frame along a unit local direction.
  Vector3 local_support(const Vector3& unit_dir) const;
  Vector3 local_interior_point() const;

  /// Radius of a ball about local_interior_point() enclosing the shape.
  double circumscribed_radius() const;

  /// True for shapes with a ball-swept boundary (sphere, capsule).
  bool is_rounded() const;

  /// Copy with the sweeping radius reduced by `amount`. Rounded shapes only.
  ConvexShape shrunk(double amount) const;

  friend ConvexShape make_sphere(double radius);
  friend ConvexShape make_capsule(double half_length, double radius);
  friend ConvexShape make_box(const Vector3& half_extents);
  friend ConvexShape make_polytope(std::vector<Vector3> vertices);
  friend ConvexShape make_ellipsoid(const Vector3& semi_axes);

 private:
  explicit ConvexShape(Variant g) : geometry_(std::move(g)) {}
  Variant geometry_;
};

ConvexShape make_sphere(double radius);
ConvexShape make_capsule(double half_length, double radius);
ConvexShape make_box(const Vector3& half_extents);
/// Needs >= 4 affinely independent vertices; duplicates are tolerated.
ConvexShape make_polytope(std::vector<Vector3> vertices);
ConvexShape make_ellipsoid(const Vector3& semi_axes);

/// Extreme point of `shape` placed at `pose` along d (normalized here).
/// Throws ZeroDirection when |d| < 1e-12.
Vector3 support(const ConvexShape& shape, const Pose& pose, const Vector3& d);

/// Center for sphere/capsule/box/ellipsoid, vertex mean for polytopes.
Vector3 interior_point(const ConvexShape& shape, const Pose& pose);

/// Unit outward normal of a LevelSetEllipsoid at a boundary point v (world
/// frame). Throws PointNotOnBoundary when v is farther than 1e-6 from the
/// surface, InvalidShape when `shape` is not an ellipsoid.
Vector3 boundary_normal(const ConvexShape& shape, const Pose& pose,
                        const Vector3& v);

/// Level function sum (x_i/a_i)^2 - 1 of an ellipsoid at world point x.
double ellipsoid_level(const ConvexShape& shape, const Pose& pose,
                       const Vector3& x);

/// Parses `v x y z` lines (other OBJ records and blank lines are skipped).
std::vector<Vector3> parse_polytope_vertices(std::istream& in);
ConvexShape load_polytope(const std::string& path);

}  // namespace pdkit
