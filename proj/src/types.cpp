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

#include "pdkit/types.hpp"

#include <cmath>

namespace pdkit {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kZeroDirection: return "ZeroDirection";
    case ErrorCode::kInvalidShape: return "InvalidShape";
    case ErrorCode::kPointNotOnBoundary: return "PointNotOnBoundary";
    case ErrorCode::kDegenerateGeometry: return "DegenerateGeometry";
    case ErrorCode::kIterationLimit: return "IterationLimit";
    case ErrorCode::kNotColliding: return "NotColliding";
    case ErrorCode::kSamplingExhausted: return "SamplingExhausted";
    case ErrorCode::kParse: return "Parse";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

Vector3 normalized_direction(const Vector3& d) {
  const double n = d.norm();
  if (!(n >= kMinDirectionNorm)) {
    throw Error(ErrorCode::kZeroDirection, "direction has zero length");
  }
  return d / n;
}

Vector3 any_perpendicular(const Vector3& u) {
  // cross with the axis least aligned with u
  Vector3 axis = Vector3::UnitX();
  if (std::abs(u.y()) < std::abs(u.x()) && std::abs(u.y()) <= std::abs(u.z())) {
    axis = Vector3::UnitY();
  } else if (std::abs(u.z()) < std::abs(u.x())) {
    axis = Vector3::UnitZ();
  }
  return u.cross(axis).normalized();
}

Pose::Pose(const Matrix3& rotation, const Vector3& translation)
    : rotation_(rotation), translation_(translation) {
  const Matrix3 gram = rotation_ * rotation_.transpose() - Matrix3::Identity();
  if (!rotation_.allFinite() || !translation_.allFinite() ||
      gram.cwiseAbs().maxCoeff() > 1e-9 ||
      std::abs(rotation_.determinant() - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidArgument,
                "pose rotation must be proper orthonormal");
  }
}

Pose::Pose(const Quaternion& rotation, const Vector3& translation) {
  const double n = rotation.norm();
  if (!(n > 1e-12) || !std::isfinite(n)) {
    throw Error(ErrorCode::kInvalidArgument, "pose quaternion has zero norm");
  }
  *this = Pose(Quaternion(rotation.coeffs() / n).toRotationMatrix(),
               translation);
}

}  // namespace pdkit
