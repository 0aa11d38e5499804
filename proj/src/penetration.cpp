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

namespace pdkit {

const char* to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kSqpShortcut: return "sqp";
    case Algorithm::kSqpFixed: return "sqp-fixed";
    case Algorithm::kEpa: return "epa";
  }
  return "unknown";
}

Algorithm parse_algorithm(const std::string& name) {
  if (name == "sqp") return Algorithm::kSqpShortcut;
  if (name == "sqp-fixed") return Algorithm::kSqpFixed;
  if (name == "epa") return Algorithm::kEpa;
  throw Error(ErrorCode::kInvalidArgument, "unknown algorithm: " + name);
}

PDResult solve(MinkowskiDifference& diff, const Vector3& d_init,
               const PenetrationOptions& options) {
  switch (options.algorithm) {
    case Algorithm::kSqpShortcut:
      return pd_sqp(diff, d_init, options.config);
    case Algorithm::kSqpFixed:
      return pd_sqp_fixed_tol(diff, d_init, options.config);
    case Algorithm::kEpa: {
      const std::int64_t before = diff.support_calls();
      GjkResult g;
      try {
        g = gjk(diff);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kDegenerateGeometry) throw;
        PDResult degenerate;
        degenerate.status = PdStatus::kDegenerate;
        degenerate.support_calls = diff.support_calls() - before;
        return degenerate;
      }
      PDResult result;
      if (g.status == GjkStatus::kSeparated) {
        result.status = PdStatus::kNotColliding;
      } else {
        result = epa(diff, g.simplex, options.epa_tol);
      }
      result.support_calls = diff.support_calls() - before;
      return result;
    }
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown algorithm");
}

PDResult penetration(const ConvexShape& shape1, const Pose& pose1,
                     const ConvexShape& shape2, const Pose& pose2,
                     const PenetrationOptions& options) {
  options.config.validate();
  if (!(options.epa_tol > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "epa_tol must be positive");
  }
  if (!overlaps(shape1, pose1, shape2, pose2)) {
    PDResult result;
    result.status = PdStatus::kNotColliding;
    return result;
  }
  MinkowskiDifference diff(shape1, pose1, shape2, pose2);
  return solve(diff, init_direction(diff, options.warm_start), options);
}

}  // namespace pdkit
