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

// Core value types shared by every pdkit module: vectors, rigid poses and
// the error type thrown across the C++ surface.

#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <stdexcept>
#include <string>

namespace pdkit {

using Vector3 = Eigen::Vector3d;
using Matrix3 = Eigen::Matrix3d;
using Quaternion = Eigen::Quaterniond;

enum class ErrorCode {
  kInvalidArgument,
  kZeroDirection,
  kInvalidShape,
  kPointNotOnBoundary,
  kDegenerateGeometry,
  kIterationLimit,
  kNotColliding,
  kSamplingExhausted,
  kParse,
  kIo,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Directions shorter than this are rejected as zero.
inline constexpr double kMinDirectionNorm = 1e-12;

/// Returns d / |d|; throws ZeroDirection when |d| < kMinDirectionNorm.
Vector3 normalized_direction(const Vector3& d);

/// Any unit vector orthogonal to a unit vector `u`.
Vector3 any_perpendicular(const Vector3& u);

/// Rigid transform x -> R x + t. The rotation is validated to be proper
/// orthonormal (|R R^T - I| entries and |det R - 1| within 1e-9).
class Pose {
 public:
  Pose() : rotation_(Matrix3::Identity()), translation_(Vector3::Zero()) {}
  Pose(const Matrix3& rotation, const Vector3& translation);
  Pose(const Quaternion& rotation, const Vector3& translation);

  static Pose identity() { return Pose(); }
  static Pose from_translation(const Vector3& t) {
    return Pose(Matrix3::Identity(), t);
  }

  const Matrix3& rotation() const { return rotation_; }
  const Vector3& translation() const { return translation_; }
  Quaternion quaternion() const { return Quaternion(rotation_); }

  Vector3 apply(const Vector3& x) const { return rotation_ * x + translation_; }
  Vector3 rotate(const Vector3& d) const { return rotation_ * d; }
  Vector3 inverse_rotate(const Vector3& d) const {
    return rotation_.transpose() * d;
  }
  Vector3 inverse_apply(const Vector3& x) const {
    return rotation_.transpose() * (x - translation_);
  }

  /// Same rotation, translation shifted by `offset`.
  Pose translated(const Vector3& offset) const {
    Pose p = *this;
    p.translation_ += offset;
    return p;
  }

 private:
  Matrix3 rotation_;
  Vector3 translation_;
};

}  // namespace pdkit
