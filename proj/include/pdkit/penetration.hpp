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

// One-call penetration query over any of the solvers.

#pragma once

#include "pdkit/baseline.hpp"
#include "pdkit/sqp.hpp"

#include <optional>
#include <string>

namespace pdkit {

enum class Algorithm { kSqpShortcut, kSqpFixed, kEpa };

/// "sqp", "sqp-fixed", "epa".
const char* to_string(Algorithm algorithm);
/// Inverse of to_string; throws InvalidArgument.
Algorithm parse_algorithm(const std::string& name);

struct PenetrationOptions {
  /// Initial ray direction (direction of v_star, i.e. -PDResult::direction).
  std::optional<Vector3> warm_start;
  Algorithm algorithm = Algorithm::kSqpShortcut;
  SqpConfig config;
  double epa_tol = 1e-6;
};

/// Solver run on an existing difference, without the overlap pre-check.
/// For EPA the GJK seeding calls are included in support_calls.
PDResult solve(MinkowskiDifference& diff, const Vector3& d_init,
               const PenetrationOptions& options);

/// Overlap pre-check (not counted in support_calls), then the selected
/// solver. Returns status NotColliding for separated shapes.
PDResult penetration(const ConvexShape& shape1, const Pose& pose1,
                     const ConvexShape& shape2, const Pose& pose2,
                     const PenetrationOptions& options = {});

}  // namespace pdkit
