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

namespace pdkit {

SupportPoint MinkowskiDifference::support(const Vector3& d) {
  const Vector3 unit = normalized_direction(d);
  ++support_calls_;
  const Vector3 w1 = shape1_->local_support(pose1_->inverse_rotate(unit));
  const Vector3 w2 = shape2_->local_support(pose2_->inverse_rotate(-unit));
  return SupportPoint(pose1_->apply(w1), pose2_->apply(w2));
}

Vector3 MinkowskiDifference::interior_anchor() const {
  return interior_point(*shape1_, *pose1_) - interior_point(*shape2_, *pose2_);
}

}  // namespace pdkit
