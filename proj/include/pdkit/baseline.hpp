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

// GJK intersection test and the Expanding Polytope Algorithm: the usual
// narrow-phase penetration pipeline, used as the comparison baseline.

#pragma once

#include "pdkit/minkowski.hpp"
#include "pdkit/result.hpp"

#include <array>
#include <vector>

namespace pdkit {

inline constexpr int kMaxGjkIters = 128;
inline constexpr int kMaxEpaExpansions = 512;

struct Simplex {
  std::array<SupportPoint, 4> points;
  int size = 0;

  void push(const SupportPoint& p) { points[size++] = p; }
  const SupportPoint& operator[](int i) const { return points[i]; }
  double volume() const;
};

enum class GjkStatus { kIntersecting, kSeparated };

struct GjkResult {
  GjkStatus status = GjkStatus::kSeparated;
  /// Origin-enclosing tetrahedron when intersecting; last simplex otherwise.
  Simplex simplex;
  /// Distance from the origin to the final simplex.
  double distance = 0.0;
  /// Separated only because kMaxGjkIters ran out.
  bool iteration_limit = false;
  int iterations = 0;
};

/// Closest point of the simplex to the origin. The simplex is reduced to the
/// vertices supporting that point; an enclosing tetrahedron is kept whole
/// and yields the zero vector.
Vector3 closest_to_origin(Simplex& simplex);

/// GJK on D with 1e-9 contact tolerance. Degenerate terminal simplices
/// (origin on a vertex, edge or face) are inflated into tetrahedra.
GjkResult gjk(MinkowskiDifference& diff);

/// EPA from an origin-containing tetrahedron. Stops when the support along
/// the nearest face normal advances that face by less than `tol`.
/// `face_distances` receives the nearest-face distance of every expansion.
PDResult epa(MinkowskiDifference& diff, const Simplex& seed, double tol = 1e-6,
             std::vector<double>* face_distances = nullptr);

}  // namespace pdkit
