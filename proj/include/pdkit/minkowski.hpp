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

#include "pdkit/shapes.hpp"

#include <cstdint>

namespace pdkit {

/// A point of A1 - A2 with the witnesses that produced it. v is always
/// constructed as w1 - w2 and never recomputed.
struct SupportPoint {
  Vector3 v = Vector3::Zero();
  Vector3 w1 = Vector3::Zero();
  Vector3 w2 = Vector3::Zero();

  SupportPoint() = default;
  SupportPoint(const Vector3& on1, const Vector3& on2)
      : v(on1 - on2), w1(on1), w2(on2) {}
};

/// Implicit Minkowski difference A1 - A2 of two posed shapes. Holds the
/// shapes and poses by reference; the caller keeps them alive.
///
/// Every call to support() bumps support_calls() by exactly one, which is
/// the instrumentation all PD algorithms are compared on. Not thread-safe;
/// use one instance per thread.
class MinkowskiDifference {
 public:
  MinkowskiDifference(const ConvexShape& shape1, const Pose& pose1,
                      const ConvexShape& shape2, const Pose& pose2)
      : shape1_(&shape1), pose1_(&pose1), shape2_(&shape2), pose2_(&pose2) {}

  /// w1 = support(A1, d), w2 = support(A2, -d). Throws ZeroDirection.
  SupportPoint support(const Vector3& d);

  /// interior_point(A1) - interior_point(A2); not counted.
  Vector3 interior_anchor() const;

  std::int64_t support_calls() const { return support_calls_; }
  void reset_counter() { support_calls_ = 0; }
  void add_support_calls(std::int64_t n) { support_calls_ += n; }

  const ConvexShape& shape1() const { return *shape1_; }
  const ConvexShape& shape2() const { return *shape2_; }
  const Pose& pose1() const { return *pose1_; }
  const Pose& pose2() const { return *pose2_; }

 private:
  const ConvexShape* shape1_;
  const Pose* pose1_;
  const ConvexShape* shape2_;
  const Pose* pose2_;
  std::int64_t support_calls_ = 0;
};

inline SupportPoint mink_support(MinkowskiDifference& diff, const Vector3& d) {
  return diff.support(d);
}

inline Vector3 interior_anchor(const MinkowskiDifference& diff) {
  return diff.interior_anchor();
}

}  // namespace pdkit
