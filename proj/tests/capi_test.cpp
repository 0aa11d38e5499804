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

// Exercises the shared library through its C interface only.

#include "pdkit/pdkit.h"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <string>

namespace {

using ShapePtr = std::unique_ptr<pdkit_shape, decltype(&pdkit_shape_free)>;

ShapePtr sphere(double r) {
  pdkit_shape* s = nullptr;
  EXPECT_EQ(pdkit_shape_sphere(r, &s), PDKIT_OK);
  return ShapePtr(s, &pdkit_shape_free);
}

pdkit_pose at(double x, double y = 0.0, double z = 0.0) {
  pdkit_pose p = pdkit_pose_identity();
  p.translation[0] = x;
  p.translation[1] = y;
  p.translation[2] = z;
  return p;
}

TEST(CApi, VersionAndStrings) {
  EXPECT_STRNE(pdkit_version(), "");
  EXPECT_STREQ(pdkit_pd_status_string(PDKIT_PD_CONVERGED), "Converged");
  EXPECT_STRNE(pdkit_error_string(PDKIT_ERR_NOT_COLLIDING), "");
}

TEST(CApi, InvalidShapeSetsLastError) {
  pdkit_shape* s = nullptr;
  EXPECT_EQ(pdkit_shape_sphere(-1.0, &s), PDKIT_ERR_INVALID_SHAPE);
  EXPECT_EQ(s, nullptr);
  EXPECT_STRNE(pdkit_last_error(), "");
  EXPECT_EQ(pdkit_shape_sphere(1.0, nullptr), PDKIT_ERR_INVALID_ARGUMENT);
}

TEST(CApi, SupportUsesPose) {
  const ShapePtr s = sphere(0.5);
  pdkit_pose pose = at(1, 2, 3);
  const double d[3] = {0, 0, 2};
  double out[3];
  ASSERT_EQ(pdkit_support(s.get(), &pose, d, out), PDKIT_OK);
  EXPECT_NEAR(out[0], 1.0, 1e-15);
  EXPECT_NEAR(out[2], 3.5, 1e-15);
  const double zero[3] = {0, 0, 0};
  EXPECT_EQ(pdkit_support(s.get(), &pose, zero, out), PDKIT_ERR_ZERO_DIRECTION);
}

TEST(CApi, QuaternionIsNormalized) {
  pdkit_shape* raw = nullptr;
  ASSERT_EQ(pdkit_shape_capsule(0.5, 0.25, &raw), PDKIT_OK);
  const ShapePtr cap(raw, &pdkit_shape_free);
  pdkit_pose pose = pdkit_pose_identity();
  // 90 degrees about y, scaled by 3: local z maps to world x
  pose.quaternion[0] = 3 * std::sqrt(0.5);
  pose.quaternion[2] = 3 * std::sqrt(0.5);
  const double d[3] = {1, 0, 0};
  double out[3];
  ASSERT_EQ(pdkit_support(cap.get(), &pose, d, out), PDKIT_OK);
  EXPECT_NEAR(out[0], 0.75, 1e-12);
}

TEST(CApi, OverlapsAndPenetration) {
  const ShapePtr s = sphere(0.5);
  const pdkit_pose p1 = at(0), p2 = at(0.6), far = at(2);
  int hit = -1;
  ASSERT_EQ(pdkit_overlaps(s.get(), &p1, s.get(), &p2, &hit), PDKIT_OK);
  EXPECT_EQ(hit, 1);
  ASSERT_EQ(pdkit_overlaps(s.get(), &p1, s.get(), &far, &hit), PDKIT_OK);
  EXPECT_EQ(hit, 0);

  for (pdkit_algorithm algo :
       {PDKIT_ALGO_SQP, PDKIT_ALGO_SQP_FIXED, PDKIT_ALGO_EPA}) {
    pdkit_options options;
    pdkit_options_default(&options);
    options.algorithm = algo;
    pdkit_result r;
    ASSERT_EQ(pdkit_penetration(s.get(), &p1, s.get(), &p2, &options, &r),
              PDKIT_OK);
    EXPECT_EQ(r.status, PDKIT_PD_CONVERGED);
    EXPECT_NEAR(r.depth, 0.4, 1e-5);
    EXPECT_NEAR(r.direction[0], -1.0, 1e-3);
    EXPECT_GT(r.support_calls, 0);
  }
  pdkit_result r;
  ASSERT_EQ(pdkit_penetration(s.get(), &p1, s.get(), &far, nullptr, &r),
            PDKIT_OK);
  EXPECT_EQ(r.status, PDKIT_PD_NOT_COLLIDING);
}

TEST(CApi, WarmStartAndBadOptions) {
  const ShapePtr s = sphere(0.5);
  const pdkit_pose p1 = at(0), p2 = at(0, 0.7);
  pdkit_options options;
  pdkit_options_default(&options);
  options.has_warm_start = 1;
  options.warm_start[1] = 1.0;
  pdkit_result r;
  ASSERT_EQ(pdkit_penetration(s.get(), &p1, s.get(), &p2, &options, &r),
            PDKIT_OK);
  EXPECT_NEAR(r.depth, 0.3, 1e-5);
  options.gap_tol = 0.0;
  EXPECT_EQ(pdkit_penetration(s.get(), &p1, s.get(), &p2, &options, &r),
            PDKIT_ERR_INVALID_ARGUMENT);
}

TEST(CApi, PolytopesFromMemoryAndFile) {
  const double tetra[] = {0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1};
  pdkit_shape* raw = nullptr;
  ASSERT_EQ(pdkit_shape_polytope(tetra, 4, &raw), PDKIT_OK);
  ShapePtr t(raw, &pdkit_shape_free);
  EXPECT_EQ(pdkit_shape_vertex_count(t.get()), 4u);

  const std::string path = ::testing::TempDir() + "pdkit_capi_tetra.obj";
  {
    std::ofstream f(path);
    f << "v 0 0 0\nv 1 0 0\nv 0 1 0\nv 0 0 1\n";
  }
  ASSERT_EQ(pdkit_shape_polytope_load(path.c_str(), &raw), PDKIT_OK);
  ShapePtr loaded(raw, &pdkit_shape_free);
  EXPECT_EQ(pdkit_shape_vertex_count(loaded.get()), 4u);
  std::remove(path.c_str());
  EXPECT_EQ(pdkit_shape_polytope_load("/nonexistent.obj", &raw), PDKIT_ERR_IO);

  ASSERT_EQ(pdkit_shape_icosphere(0.5, 162, &raw), PDKIT_OK);
  ShapePtr ico(raw, &pdkit_shape_free);
  EXPECT_EQ(pdkit_shape_vertex_count(ico.get()), 162u);
  EXPECT_EQ(pdkit_shape_vertex_count(sphere(1).get()), 0u);
}

TEST(CApi, BenchRunAndCsv) {
  pdkit_bench_config config;
  pdkit_bench_config_default(&config);
  config.n_trials = 5;
  const double devs[] = {5.0, 25.0};
  config.deviations_deg = devs;
  config.n_deviations = 2;
  config.algorithm_mask = 1u << PDKIT_ALGO_SQP | 1u << PDKIT_ALGO_EPA;
  pdkit_bench_report* report = nullptr;
  ASSERT_EQ(pdkit_bench_run(&config, &report), PDKIT_OK);
  // 3 pairs x 5 poses x (sqp at 2 deviations + epa)
  EXPECT_EQ(pdkit_bench_record_count(report), 45u);
  EXPECT_EQ(pdkit_bench_violations(report), 0);
  const std::string summary = pdkit_bench_summary_json(report);
  EXPECT_EQ(summary.front(), '[');
  EXPECT_NE(summary.find("\"sphere-capsule\""), std::string::npos);
  const std::string path = ::testing::TempDir() + "pdkit_capi_bench.csv";
  EXPECT_EQ(pdkit_bench_write_csv(report, path.c_str()), PDKIT_OK);
  std::ifstream f(path);
  int lines = 0;
  for (std::string line; std::getline(f, line);) lines += line[0] != '#';
  EXPECT_EQ(lines, 46);  // header + records
  std::remove(path.c_str());
  pdkit_bench_free(report);

  config.n_trials = 0;
  EXPECT_EQ(pdkit_bench_run(&config, &report), PDKIT_ERR_INVALID_ARGUMENT);
}

}  // namespace
