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

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <utility>

namespace pdkit {
namespace {

constexpr double kVisibleTol = 1e-12;
constexpr double kMinFaceArea2 = 1e-28;

struct Face {
  int a, b, c;  // counter-clockwise seen from outside
  Vector3 normal;
  double distance;
  bool alive;
};

class Polytope {
 public:
  std::vector<SupportPoint> vertices;
  std::vector<Face> faces;

  // Returns false for a degenerate (zero-area) face.
  bool add_face(int a, int b, int c) {
    const Vector3& pa = vertices[a].v;
    const Vector3 n = (vertices[b].v - pa).cross(vertices[c].v - pa);
    const double n2 = n.squaredNorm();
    if (!(n2 > kMinFaceArea2)) return false;
    const Vector3 unit = n / std::sqrt(n2);
    faces.push_back({a, b, c, unit, unit.dot(pa), true});
    return true;
  }
};

Vector3 face_barycentric(const Polytope& poly, const Face& f, const Vector3& x) {
  const Vector3& a = poly.vertices[f.a].v;
  const Vector3 v0 = poly.vertices[f.b].v - a;
  const Vector3 v1 = poly.vertices[f.c].v - a;
  const Vector3 v2 = x - a;
  const double d00 = v0.dot(v0);
  const double d01 = v0.dot(v1);
  const double d11 = v1.dot(v1);
  const double d20 = v2.dot(v0);
  const double d21 = v2.dot(v1);
  const double denom = d00 * d11 - d01 * d01;
  if (!(std::abs(denom) > 0.0)) return {1.0, 0.0, 0.0};
  const double v = (d11 * d20 - d01 * d21) / denom;
  const double w = (d00 * d21 - d01 * d20) / denom;
  return {1.0 - v - w, v, w};
}

}  // namespace

PDResult epa(MinkowskiDifference& diff, const Simplex& seed, double tol,
             std::vector<double>* face_distances) {
  if (!(tol > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "epa tolerance must be positive");
  }
  if (seed.size != 4 || std::abs(seed.volume()) <= 1e-18) {
    throw Error(ErrorCode::kDegenerateGeometry,
                "epa needs a non-degenerate tetrahedron");
  }
  const std::int64_t calls_before = diff.support_calls();

  Polytope poly;
  for (int i = 0; i < 4; ++i) poly.vertices.push_back(seed[i]);
  const Vector3 centroid =
      0.25 * (seed[0].v + seed[1].v + seed[2].v + seed[3].v);
  constexpr int kTetFaces[4][3] = {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}};
  for (const auto& t : kTetFaces) {
    int a = t[0], b = t[1], c = t[2];
    const Vector3 n = (poly.vertices[b].v - poly.vertices[a].v)
                          .cross(poly.vertices[c].v - poly.vertices[a].v);
    if (n.dot(poly.vertices[a].v - centroid) < 0.0) std::swap(b, c);
    if (!poly.add_face(a, b, c)) {
      throw Error(ErrorCode::kDegenerateGeometry, "degenerate seed face");
    }
  }

  using Entry = std::pair<double, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  for (int i = 0; i < 4; ++i) queue.push({poly.faces[i].distance, i});

  PDResult result;
  double best_h = std::numeric_limits<double>::infinity();
  Vector3 best_normal = Vector3::UnitX();
  int best_face = 0;
  PdStatus status = PdStatus::kIterationLimit;
  int expansions = 0;

  while (!queue.empty()) {
    const int fi = queue.top().second;
    queue.pop();
    if (!poly.faces[fi].alive) continue;
    const Face face = poly.faces[fi];
    if (face_distances != nullptr) face_distances->push_back(face.distance);

    const SupportPoint w = diff.support(face.normal);
    const double h = w.v.dot(face.normal);
    if (h < best_h) {
      best_h = h;
      best_normal = face.normal;
      best_face = fi;
    }
    if (h - face.distance < tol) {
      // report the certified face so the witnesses share its plane
      best_h = h;
      best_normal = face.normal;
      best_face = fi;
      status = PdStatus::kConverged;
      break;
    }
    if (expansions >= kMaxEpaExpansions) break;
    ++expansions;

    // Directed edges of visible faces; shared edges cancel, the horizon stays.
    std::map<std::pair<int, int>, bool> edges;
    for (Face& f : poly.faces) {
      if (!f.alive || f.normal.dot(w.v) - f.distance <= kVisibleTol) continue;
      f.alive = false;
      const int loop[3] = {f.a, f.b, f.c};
      for (int e = 0; e < 3; ++e) {
        const int u = loop[e];
        const int v = loop[(e + 1) % 3];
        auto reverse = edges.find({v, u});
        if (reverse != edges.end()) {
          edges.erase(reverse);
        } else {
          edges[{u, v}] = true;
        }
      }
    }
    bool degenerate = edges.size() < 3;
    const int wi = static_cast<int>(poly.vertices.size());
    poly.vertices.push_back(w);
    for (const auto& [edge, unused] : edges) {
      if (degenerate) break;
      if (!poly.add_face(edge.first, edge.second, wi)) {
        degenerate = true;
        break;
      }
      const int ni = static_cast<int>(poly.faces.size()) - 1;
      // the origin must stay inside every face plane
      if (poly.faces[ni].distance < -1e-9) {
        degenerate = true;
        break;
      }
      queue.push({poly.faces[ni].distance, ni});
    }
    if (degenerate) {
      status = PdStatus::kDegenerate;
      break;
    }
  }

  set_boundary_point(result, best_h * best_normal, best_normal);
  const Face& f = poly.faces[best_face];
  const Vector3 bary =
      face_barycentric(poly, f, std::max(f.distance, 0.0) * f.normal);
  result.witness1 = bary[0] * poly.vertices[f.a].w1 +
                    bary[1] * poly.vertices[f.b].w1 +
                    bary[2] * poly.vertices[f.c].w1;
  result.witness2 = bary[0] * poly.vertices[f.a].w2 +
                    bary[1] * poly.vertices[f.b].w2 +
                    bary[2] * poly.vertices[f.c].w2;
  result.status = status;
  result.sqp_iterations = expansions;
  result.support_calls = diff.support_calls() - calls_before;
  return result;
}

}  // namespace pdkit
