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

#include "pdkit/penetration.hpp"

#include "pdkit/oracle.hpp"
#include "test_util.hpp"

#include <cmath>

namespace pdkit {
namespace {

using testing::at;
using testing::random_pose;

TEST(Algorithm, NamesRoundTrip) {
  for (Algorithm a :
       {Algorithm::kSqpShortcut, Algorithm::kSqpFixed, Algorithm::kEpa}) {
    EXPECT_EQ(parse_algorithm(to_string(a)), a);
  }
  EXPECT_PDKIT_ERROR(parse_algorithm("gjk"), ErrorCode::kInvalidArgument);
}

class EveryAlgorithm : public ::testing::TestWithParam<Algorithm> {
 protected:
  PenetrationOptions options() const {
    PenetrationOptions o;
    o.algorithm = GetParam();
    return o;
  }
};

TEST_P(EveryAlgorithm, SeparatedShapes) {
  const ConvexShape s = make_sphere(0.5);
  const PDResult r = penetration(s, at(0), s, at(3), options());
  EXPECT_EQ(r.status, PdStatus::kNotColliding);
  EXPECT_EQ(r.depth, 0.0);
}

TEST_P(EveryAlgorithm, BoxOnBox) {
  const ConvexShape b = make_box(Vector3(1, 1, 1));
  const PDResult r = penetration(b, at(0, 0, 1.8), b, at(0), options());
  EXPECT_NEAR(r.depth, 0.2, 1e-5);
  EXPECT_VEC_NEAR(r.direction, Vector3(0, 0, 1), 1e-4);
}

TEST_P(EveryAlgorithm, TouchingFacesHaveZeroDepth) {
  const ConvexShape b = make_box(Vector3(1, 1, 1));
  const PDResult r = penetration(b, at(2), b, at(0), options());
  if (r.status != PdStatus::kNotColliding) {
    EXPECT_NEAR(r.depth, 0.0, 1e-9);
  }
}

TEST_P(EveryAlgorithm, EllipsoidAgainstSphere) {
  const ConvexShape e = make_ellipsoid(Vector3(1.0, 0.5, 0.5));
  const ConvexShape s = make_sphere(0.25);
  // sphere pokes 0.1 into the long end of the ellipsoid
  const PDResult r = penetration(e, at(0), s, at(1.15), options());
  EXPECT_NEAR(r.depth, 0.1, 1e-4);
  EXPECT_VEC_NEAR(r.direction, Vector3(-1, 0, 0), 2e-2);
}

// Witnesses lie on their shapes and their difference lies on the reported
// supporting plane, up to the solver tolerance.
TEST_P(EveryAlgorithm, WitnessesAndCertificate) {
  Rng rng(81);
  const auto pairs = primitive_pairs();
  int certified = 0, converged = 0;
  for (int i = 0; i < 300; ++i) {
    const PairSpec& pair = pairs[i % pairs.size()];
    const PosePair pp = random_colliding_pose(pair, rng);
    const PDResult r =
        penetration(pair.shape1, pp.pose1, pair.shape2, pp.pose2, options());
    ASSERT_NE(r.status, PdStatus::kNotColliding);
    EXPECT_NEAR(r.direction.norm(), 1.0, 1e-12);
    EXPECT_VEC_NEAR(r.v_star, -r.depth * r.direction, 1e-12);
    EXPECT_NEAR((r.witness1 - r.witness2 - r.v_star).dot(r.direction), 0.0,
                1e-5) << to_string(r.status);
    for (const auto& [w, shape, pose] :
         {std::tuple(r.witness1, &pair.shape1, &pp.pose1),
          std::tuple(r.witness2, &pair.shape2, &pp.pose2)}) {
      const Vector3 n = (w - interior_point(*shape, *pose)).normalized();
      EXPECT_LE(w.dot(n), support(*shape, *pose, n).dot(n) + 1e-9);
    }
    if (r.status != PdStatus::kConverged) continue;
    ++converged;
    certified += separation_certificate(pair.shape1, pp.pose1, pair.shape2,
                                        pp.pose2, r.v_star);
  }
  EXPECT_EQ(certified, converged);
  EXPECT_GT(converged, 250);
}

// Rigidly moving both shapes moves the answer with them.
TEST_P(EveryAlgorithm, RigidMotionEquivariance) {
  Rng rng(82);
  const auto pairs = polytope_pairs({42});
  const PairSpec& pair = pairs[0];
  for (int i = 0; i < 50; ++i) {
    const PosePair pp = random_colliding_pose(pair, rng);
    const Pose g = random_pose(rng, 5.0);
    auto compose = [&](const Pose& p) {
      return Pose(g.rotation() * p.rotation(), g.apply(p.translation()));
    };
    PenetrationOptions o = options();
    o.warm_start = Vector3(0.3, -0.2, 0.9);
    const PDResult a =
        penetration(pair.shape1, pp.pose1, pair.shape2, pp.pose2, o);
    o.warm_start = g.rotate(*o.warm_start);
    const PDResult b = penetration(pair.shape1, compose(pp.pose1),
                                   pair.shape2, compose(pp.pose2), o);
    EXPECT_NEAR(a.depth, b.depth, 1e-6);
  }
}

TEST_P(EveryAlgorithm, InvalidOptionsThrow) {
  const ConvexShape s = make_sphere(0.5);
  PenetrationOptions o = options();
  o.epa_tol = 0.0;
  EXPECT_PDKIT_ERROR(penetration(s, at(0), s, at(0.5), o),
                     ErrorCode::kInvalidArgument);
  o = options();
  o.config.direction_tol = -1.0;
  EXPECT_PDKIT_ERROR(penetration(s, at(0), s, at(0.5), o),
                     ErrorCode::kInvalidArgument);
}

INSTANTIATE_TEST_SUITE_P(Penetration, EveryAlgorithm,
                         ::testing::Values(Algorithm::kSqpShortcut,
                                           Algorithm::kSqpFixed,
                                           Algorithm::kEpa),
                         [](const auto& info) {
                           switch (info.param) {
                             case Algorithm::kSqpShortcut: return "Sqp";
                             case Algorithm::kSqpFixed: return "SqpFixed";
                             case Algorithm::kEpa: return "Epa";
                           }
                           return "Unknown";
                         });

}  // namespace
}  // namespace pdkit
