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

#include "pdkit/minkowski.hpp"

#include "test_util.hpp"

namespace pdkit {
namespace {

using testing::at;
using testing::random_pose;
using testing::random_unit;
using testing::shape_zoo;

TEST(MinkSupport, UnitSpheres) {
  const ConvexShape s = make_sphere(1.0);
  const Pose p1 = at(0), p2 = at(1);
  MinkowskiDifference diff(s, p1, s, p2);
  const SupportPoint sp = mink_support(diff, Vector3(1, 0, 0));
  EXPECT_VEC_NEAR(sp.w1, Vector3(1, 0, 0), 1e-15);
  EXPECT_VEC_NEAR(sp.w2, Vector3(0, 0, 0), 1e-15);
  EXPECT_VEC_NEAR(sp.v, Vector3(1, 0, 0), 1e-15);
}

TEST(MinkSupport, IdenticalShapesContainOrigin) {
  Rng rng(21);
  for (const ConvexShape& shape : shape_zoo()) {
    const Pose pose = random_pose(rng);
    MinkowskiDifference diff(shape, pose, shape, pose);
    for (int i = 0; i < 50; ++i) {
      const Vector3 d = random_unit(rng);
      EXPECT_GE(diff.support(d).v.dot(d), 0.0);
    }
  }
}

TEST(MinkSupport, BoxMinusTinySphere) {
  const ConvexShape box = make_box(Vector3(1, 1, 1));
  const ConvexShape dot = make_sphere(1e-9);
  const Pose p1, p2 = at(-0.5);
  MinkowskiDifference diff(box, p1, dot, p2);
  EXPECT_NEAR(diff.support(Vector3(1, 0, 0)).v.x(), 1.5, 2e-9);
}

TEST(MinkSupport, ZeroDirectionThrows) {
  const ConvexShape s = make_sphere(1.0);
  const Pose p;
  MinkowskiDifference diff(s, p, s, p);
  EXPECT_PDKIT_ERROR(diff.support(Vector3::Zero()), ErrorCode::kZeroDirection);
}

TEST(MinkSupport, CountsEveryCall) {
  const ConvexShape s = make_sphere(1.0);
  const Pose p;
  MinkowskiDifference diff(s, p, s, p);
  for (int i = 0; i < 7; ++i) diff.support(Vector3(1, 0, 0));
  diff.interior_anchor();
  EXPECT_EQ(diff.support_calls(), 7);
  diff.reset_counter();
  EXPECT_EQ(diff.support_calls(), 0);
}

TEST(InteriorAnchor, Examples) {
  const ConvexShape s = make_sphere(1.0);
  const Pose p0 = at(0), p1 = at(1);
  EXPECT_VEC_NEAR(interior_anchor(MinkowskiDifference(s, p0, s, p1)),
                  Vector3(-1, 0, 0), 1e-15);
  EXPECT_VEC_NEAR(interior_anchor(MinkowskiDifference(s, p0, s, p0)),
                  Vector3::Zero(), 1e-15);
  const ConvexShape box = make_box(Vector3(1, 1, 1));
  const ConvexShape cap = make_capsule(0.5, 0.25);
  const Pose pb = at(1, 1, 1), pc = at(0, 0, 2);
  EXPECT_VEC_NEAR(interior_anchor(MinkowskiDifference(box, pb, cap, pc)),
                  Vector3(1, 1, -1), 1e-15);
}

// v = w1 - w2 with w1 = supp(A1, d) and w2 = supp(A2, -d).
TEST(MinkSupportProperty, WitnessIdentity) {
  Rng rng(22);
  const auto zoo = shape_zoo();
  for (const ConvexShape& a : zoo) {
    for (const ConvexShape& b : zoo) {
      const Pose pa = random_pose(rng), pb = random_pose(rng);
      MinkowskiDifference diff(a, pa, b, pb);
      for (int i = 0; i < 20; ++i) {
        const Vector3 d = random_unit(rng);
        const SupportPoint sp = diff.support(d);
        EXPECT_VEC_NEAR(sp.v, sp.w1 - sp.w2, 1e-15);
        EXPECT_VEC_NEAR(sp.w1, support(a, pa, d), 1e-15);
        EXPECT_VEC_NEAR(sp.w2, support(b, pb, -d), 1e-15);
      }
    }
  }
}

}  // namespace
}  // namespace pdkit
