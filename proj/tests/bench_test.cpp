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

#include "pdkit/bench.hpp"

#include "pdkit/mpr.hpp"
#include "pdkit/oracle.hpp"
#include "test_util.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace pdkit {
namespace {

using testing::random_unit;

std::size_t vertex_count(const ConvexShape& s) {
  return std::get<ConvexPolytope>(s.geometry()).vertices.size();
}

TEST(TessellatedSphere, LevelVertexCounts) {
  EXPECT_EQ(vertex_count(tessellated_sphere(0.5, 12)), 12u);
  EXPECT_EQ(vertex_count(tessellated_sphere(0.5, 42)), 42u);
  EXPECT_EQ(vertex_count(tessellated_sphere(0.5, 162)), 162u);
  EXPECT_EQ(vertex_count(tessellated_sphere(0.5, 642)), 642u);
  EXPECT_EQ(vertex_count(tessellated_sphere(0.5, 2562)), 2562u);
  EXPECT_EQ(vertex_count(tessellated_sphere(0.5, 150)), 162u);  // nearest
}

TEST(TessellatedSphere, VerticesOnSphereAndDistinct) {
  const ConvexShape s = tessellated_sphere(0.5, 642);
  const auto& v = std::get<ConvexPolytope>(s.geometry()).vertices;
  std::set<std::tuple<long, long, long>> keys;
  for (const Vector3& x : v) {
    EXPECT_NEAR(x.norm(), 0.5, 1e-12);
    keys.insert({std::lround(x.x() * 1e9), std::lround(x.y() * 1e9),
                 std::lround(x.z() * 1e9)});
  }
  EXPECT_EQ(keys.size(), v.size());
}

TEST(TessellatedSphere, RejectsTooFewVertices) {
  EXPECT_PDKIT_ERROR(tessellated_sphere(0.5, 4), ErrorCode::kInvalidArgument);
}

TEST(PerturbDirection, Examples) {
  Rng rng(71);
  EXPECT_VEC_NEAR(perturb_direction(Vector3(0, 0, 1), 0.0, rng),
                  Vector3(0, 0, 1), 1e-15);
  EXPECT_VEC_NEAR(perturb_direction(Vector3(0, 0, 1), 90.0, Vector3(1, 0, 0)),
                  Vector3(0, -1, 0), 1e-15);
  EXPECT_VEC_NEAR(perturb_direction(Vector3(0, 0, 1), 90.0, Vector3(-1, 0, 0)),
                  Vector3(0, 1, 0), 1e-15);
}

TEST(PerturbDirection, Errors) {
  Rng rng(72);
  EXPECT_PDKIT_ERROR(perturb_direction(Vector3::Zero(), 5.0, rng),
                     ErrorCode::kZeroDirection);
  EXPECT_PDKIT_ERROR(perturb_direction(Vector3(1, 0, 0), 90.0, rng),
                     ErrorCode::kInvalidArgument);
  EXPECT_PDKIT_ERROR(perturb_direction(Vector3(1, 0, 0), -1.0, rng),
                     ErrorCode::kInvalidArgument);
}

// The output makes exactly the requested angle with the input.
TEST(PerturbDirectionProperty, ExactAngle) {
  Rng rng(73);
  for (double deg : {5.0, 25.0, 45.0, 89.0}) {
    for (int i = 0; i < 200; ++i) {
      const Vector3 d = random_unit(rng);
      const Vector3 out = perturb_direction(d, deg, rng);
      EXPECT_NEAR(out.norm(), 1.0, 1e-12);
      EXPECT_NEAR(d.dot(out), std::cos(deg * M_PI / 180.0), 1e-9);
    }
  }
}

TEST(RandomRotation, IsProperRotation) {
  Rng rng(74);
  for (int i = 0; i < 100; ++i) {
    const Matrix3 r = random_rotation(rng).toRotationMatrix();
    EXPECT_LE((r * r.transpose() - Matrix3::Identity()).cwiseAbs().maxCoeff(),
              1e-12);
    EXPECT_NEAR(r.determinant(), 1.0, 1e-12);
  }
}

TEST(RandomCollidingPose, AcceptedPosesOverlapDeeply) {
  Rng rng(75);
  const auto pairs = primitive_pairs();
  for (int i = 0; i < 300; ++i) {
    const PairSpec& pair = pairs[i % pairs.size()];
    const PosePair pp = random_colliding_pose(pair, rng);
    EXPECT_TRUE(overlaps(pair.shape1, pp.pose1, pair.shape2, pp.pose2));
    const AnalyticPD pd =
        analytic_pd(pair.shape1, pp.pose1, pair.shape2, pp.pose2);
    EXPECT_GE(pd.depth, kGrazingDepth);
    if (pair.id == "sphere-sphere") {
      EXPECT_LT((pp.pose1.translation() - pp.pose2.translation()).norm(), 1.0);
      EXPECT_LE(pd.depth, 1.0);
    }
  }
}

TEST(RandomCollidingPose, SameSeedSameSequence) {
  const auto pairs = polytope_pairs({42});
  Rng a(76), b(76);
  for (int i = 0; i < 20; ++i) {
    const PosePair pa = random_colliding_pose(pairs[0], a);
    const PosePair pb = random_colliding_pose(pairs[0], b);
    EXPECT_EQ(pa.pose1.translation(), pb.pose1.translation());
    EXPECT_EQ(pa.pose2.rotation(), pb.pose2.rotation());
  }
}

TEST(RandomCollidingPose, NeedleExhausts) {
  // overlapping offsets fill ~1e-7 of the sampling ball
  const ConvexShape dot = make_sphere(0.01);
  const ConvexShape needle = make_capsule(100.0, 0.01);
  const PairSpec pair{"dot-needle", dot, needle, dot, true};
  Rng rng(77);
  EXPECT_PDKIT_ERROR(random_colliding_pose(pair, rng),
                     ErrorCode::kSamplingExhausted);
}

TEST(SeparationCertificate, Spheres) {
  const ConvexShape s = make_sphere(0.5);
  const Pose p1 = testing::at(0), p2 = testing::at(0.6);
  EXPECT_TRUE(separation_certificate(s, p1, s, p2, Vector3(0.4, 0, 0)));
  EXPECT_FALSE(separation_certificate(s, p1, s, p2, Vector3(0.3, 0, 0)));
  EXPECT_FALSE(separation_certificate(s, p1, s, p2, Vector3(-0.4, 0, 0)));
}

TEST(BenchConfig, Validation) {
  BenchConfig c;
  c.n_trials = 0;
  EXPECT_PDKIT_ERROR(c.validate(), ErrorCode::kInvalidArgument);
  c = BenchConfig{};
  c.deviations_deg = {95.0};
  EXPECT_PDKIT_ERROR(c.validate(), ErrorCode::kInvalidArgument);
  c = BenchConfig{};
  c.suite = Suite::kPolytopes;
  c.resolutions = {};
  EXPECT_PDKIT_ERROR(c.validate(), ErrorCode::kInvalidArgument);
  c = BenchConfig{};
  c.epa_tol = -1.0;
  EXPECT_PDKIT_ERROR(c.validate(), ErrorCode::kInvalidArgument);
}

BenchConfig small_config(Suite suite) {
  BenchConfig c;
  c.seed = 9;
  c.n_trials = 20;
  c.suite = suite;
  c.deviations_deg = {5.0, 45.0};
  c.resolutions = {12, 162};
  return c;
}

TEST(RunBenchmark, RecordLayout) {
  const BenchReport report = run_benchmark(small_config(Suite::kPrimitives));
  // 3 pairs x 20 poses x (2 SQP algorithms x 2 deviations + EPA)
  ASSERT_EQ(report.records.size(), 3u * 20u * 5u);
  EXPECT_EQ(report.violations, 0);
  for (const TrialRecord& r : report.records) {
    ASSERT_TRUE(r.oracle_depth.has_value());
    ASSERT_TRUE(r.abs_error.has_value());
    EXPECT_EQ(r.deviation_deg.has_value(), r.algorithm != Algorithm::kEpa);
    EXPECT_NEAR(*r.abs_error, std::abs(r.depth - *r.oracle_depth), 1e-15);
    EXPECT_GT(r.support_calls, 0);
  }
  EXPECT_EQ(report.summary.size(), 3u * 5u);
}

TEST(RunBenchmark, PolytopeRecordsHaveNoOracle) {
  const BenchReport report = run_benchmark(small_config(Suite::kPolytopes));
  ASSERT_EQ(report.records.size(), 2u * 20u * 5u);
  EXPECT_EQ(report.violations, 0);
  for (const TrialRecord& r : report.records) {
    EXPECT_FALSE(r.oracle_depth.has_value());
  }
}

// Same seed gives identical records; threads do not change them.
TEST(RunBenchmark, Deterministic) {
  BenchConfig c = small_config(Suite::kPrimitives);
  const BenchReport a = run_benchmark(c);
  c.threads = 3;
  const BenchReport b = run_benchmark(c);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].pair_id, b.records[i].pair_id);
    EXPECT_EQ(a.records[i].seed, b.records[i].seed);
    EXPECT_EQ(a.records[i].depth, b.records[i].depth);
    EXPECT_EQ(a.records[i].support_calls, b.records[i].support_calls);
    EXPECT_EQ(a.records[i].direction, b.records[i].direction);
  }
}

// A record's seed replays its pose.
TEST(RunBenchmark, SeedReplaysPose) {
  const BenchReport report = run_benchmark(small_config(Suite::kPrimitives));
  const auto pairs = primitive_pairs();
  const TrialRecord& r = report.records[7];
  const PairSpec* pair = nullptr;
  for (const PairSpec& p : pairs) {
    if (p.id == r.pair_id) pair = &p;
  }
  ASSERT_NE(pair, nullptr);
  Rng rng(r.seed);
  const PosePair pp = random_colliding_pose(*pair, rng);
  EXPECT_LE((pp.pose1.translation() - r.pose1.translation()).norm(), 1e-15);
  EXPECT_LE((pp.pose2.translation() - r.pose2.translation()).norm(), 1e-15);
}

TEST(WriteCsv, HeaderAndRows) {
  const BenchConfig c = small_config(Suite::kPrimitives);
  const BenchReport report = run_benchmark(c);
  std::ostringstream out;
  write_csv(out, c, report);
  std::istringstream in(out.str());
  std::string line;
  std::size_t rows = 0;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.rfind("#", 0) == 0) continue;
    if (!header) {
      EXPECT_EQ(line,
                "pair_id,seed,pose1,pose2,algorithm,deviation_deg,depth,"
                "direction,oracle_depth,abs_error,support_calls,"
                "sqp_iterations,wall_time_us,status");
      header = true;
      continue;
    }
    ++rows;
  }
  EXPECT_EQ(rows, report.records.size());
}

}  // namespace
}  // namespace pdkit
