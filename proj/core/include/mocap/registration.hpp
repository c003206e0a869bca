// Copyright 2026 the mocapcheck authors
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

#ifndef MOCAP_REGISTRATION_HPP
#define MOCAP_REGISTRATION_HPP

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "mocap/geometry.hpp"
#include "mocap/skeleton.hpp"

namespace mocap {

/// Similarity transform p -> scale * rotation * p + translation.
/// rotation is orthonormal with det +1; scale > 0.
struct RigidTransform {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();
  double scale = 1.0;

  Vec3 apply(const Vec3& p) const { return scale * (rotation * p) + translation; }
};

/// outer ∘ inner: applying the result once equals inner then outer.
RigidTransform compose(const RigidTransform& outer, const RigidTransform& inner);

/// Orientation triple in degrees. Values are unconstrained; normalized()
/// wraps each component into (-180, 180].
struct EulerAngles {
  double x_deg = 0.0;
  double y_deg = 0.0;
  double z_deg = 0.0;

  EulerAngles normalized() const;
  double component(Axis a) const;
  double& component(Axis a);
};

enum class EulerMode { intrinsic, extrinsic };

/// Axis order and composition mode interpreting an EulerAngles triple.
/// The order lists the axes in application sequence; each rotation takes
/// its angle from the matching EulerAngles component. Default: intrinsic
/// ZXY (an artifact default, not a vendor-documented convention).
struct RotationConvention {
  std::array<Axis, 3> order = {Axis::Z, Axis::X, Axis::Y};
  EulerMode mode = EulerMode::intrinsic;

  /// Parses "zxy", "intrinsic-zxy", "extrinsic-xyz", case-insensitive.
  static RotationConvention parse(std::string_view s);
  std::string str() const;

  friend bool operator==(const RotationConvention&, const RotationConvention&) = default;
};

struct NormalizeResult {
  SkeletonFrame frame;
  RigidTransform transform;  // maps the input frame onto the output exactly
};

/// Centers a frame on the joint centroid and scales it to unit RMS joint
/// distance. Pure translation + uniform scale, never a rotation.
/// Throws DegenerateFrame when all joints coincide (scale undefined).
NormalizeResult normalize(const SkeletonFrame& frame);

struct LabeledPoint {
  std::string label;
  Vec3 p;
};

struct AlignResult {
  RigidTransform transform;
  double residual = 0.0;  // sum of squared distances at the optimum
};

/// Closed-form least-squares registration of labeled anchor points:
/// finds the rotation (+ optional uniform scale) and translation
/// minimizing the summed squared distance from transformed source anchors
/// to target anchors. Reflections are corrected to proper rotations by
/// flipping the smallest singular direction.
/// Throws CollinearAnchors when the source anchors span less than a plane,
/// and Error(invalid_config) when labels do not match pairwise.
AlignResult rigid_align(const std::vector<LabeledPoint>& source,
                        const std::vector<LabeledPoint>& target,
                        bool with_scale = false);

/// Applies a rigid transform to every joint of a frame; timestamp kept.
SkeletonFrame apply_transform(const SkeletonFrame& frame, const RigidTransform& t);

Mat3 euler_to_rotation(const EulerAngles& e, const RotationConvention& c);

struct EulerDecomposition {
  EulerAngles angles;
  bool gimbal_locked = false;
};

/// Extracts the Euler triple on the principal branch (middle angle in
/// [-90, 90]). At gimbal lock the free angle goes to the first rotation
/// and the last is set to 0, flagged via gimbal_locked.
/// Throws NotARotation if r fails the orthonormality tolerance (1e-6).
EulerDecomposition rotation_to_euler(const Mat3& r, const RotationConvention& c);

/// Angle of the relative rotation between two orientations, in degrees
/// [0, 180]. Accurate near both 0 and 180.
double rotation_angle_deg(const Mat3& a, const Mat3& b);

}  // namespace mocap

#endif  // MOCAP_REGISTRATION_HPP
