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

#pragma once

#include "pdkit/types.hpp"

#include <cstdint>

namespace pdkit {

enum class PdStatus {
  kConverged,
  kIterationLimit,
  kNotColliding,
  kDegenerate,  // numerical breakdown; best-so-far values are reported
};

const char* to_string(PdStatus status);

/// Penetration query result.
///
/// v_star is a point on (or just outside) boundary(A1 - A2); translating A1
/// by -v_star separates the shapes. depth = |v_star| and direction is the
/// minimum penetration direction normalized(-v_star). When status is
/// kNotColliding depth and direction carry no meaning (zeros).
struct PDResult {
  double depth = 0.0;
  Vector3 direction = Vector3::Zero();
  Vector3 v_star = Vector3::Zero();
  Vector3 witness1 = Vector3::Zero();
  Vector3 witness2 = Vector3::Zero();
  PdStatus status = PdStatus::kNotColliding;
  int sqp_iterations = 0;
  std::int64_t support_calls = 0;
};

/// Fills depth/direction from v_star; `fallback` is used as the outward
/// normal when v_star is the zero vector.
void set_boundary_point(PDResult& result, const Vector3& v_star,
                        const Vector3& fallback);

}  // namespace pdkit
