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

#ifndef MOCAP_SKELETON_HPP
#define MOCAP_SKELETON_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mocap/errors.hpp"
#include "mocap/geometry.hpp"

namespace mocap {

// Joints are identified by case-sensitive names, unique within a topology.
using JointId = std::string;

/// The four correspondence anchors used for rigid alignment.
struct Anchors {
  JointId left_shoulder;
  JointId right_shoulder;
  JointId left_hip;
  JointId right_hip;

  std::vector<JointId> as_list() const {
    return {left_shoulder, right_shoulder, left_hip, right_hip};
  }
};

struct SkeletonTopology {
  std::string name;
  std::vector<JointId> joints;  // declaration order is the canonical order
  std::vector<std::pair<JointId, JointId>> edges;  // (parent, child)
  Anchors anchors;

  bool has_joint(const JointId& id) const;
};

struct SkeletonFrame {
  double t = 0.0;  // seconds
  std::map<JointId, Vec3> positions;  // meters
};

enum class ExerciseKind { squat, situp, pushup, other };

/// Exercise tag: one of the three canonical exercises or a free-form label.
struct Exercise {
  ExerciseKind kind = ExerciseKind::other;
  std::string label;  // canonical name, or the custom label for `other`

  static Exercise parse(std::string_view s);
  const std::string& name() const { return label; }

  friend bool operator==(const Exercise&, const Exercise&) = default;
};

/// Sort key following the report row order (squat, situp, pushup, others).
int exercise_rank(const Exercise& e);

struct RecordingMeta {
  std::string subject;
  Exercise exercise = Exercise::parse("other");
  double camera_perspective_deg = 0.0;  // 0 or 45 expected
  std::string clothing;
  int repetitions = 1;
};

struct MotionSequence {
  SkeletonTopology topology;
  std::vector<SkeletonFrame> frames;
  RecordingMeta meta;

  /// Enforces strictly increasing timestamps and full-topology frames.
  /// Throws TimestampOrder / MissingJoint. Sequences produced by
  /// synth::perturb with dropout > 0 intentionally do not satisfy this.
  void validate() const;
};

/// One target joint assembled from a weighted combination of source joints.
struct JointMapRule {
  JointId target;
  std::vector<std::pair<JointId, double>> sources;  // weights sum to 1
};

struct JointMap {
  std::string target_topology;
  std::vector<JointMapRule> rules;
};

/// Checks all SkeletonTopology invariants and returns the topology.
/// Throws DuplicateJoint / DanglingEdge / MissingAnchor / CyclicEdges,
/// naming the offending element.
const SkeletonTopology& validate_topology(const SkeletonTopology& topology);

/// Checks rule uniqueness and weight constraints (non-negative, sum 1
/// within 1e-9). Throws Error with Errc::invalid_config on violation.
const JointMap& validate_joint_map(const JointMap& map);

/// Identity map for a topology: each joint maps to itself with weight 1.
JointMap identity_map(const SkeletonTopology& topology);

/// Maps a frame into the target topology; each target position is the
/// weighted sum of source positions. Timestamp preserved.
/// Throws MissingSourceJoint if a referenced source joint is absent.
SkeletonFrame map_topology(const SkeletonFrame& frame, const JointMap& map);

/// Like map_topology, but target joints whose sources are missing are
/// omitted instead of failing (used downstream of joint dropout).
SkeletonFrame map_topology_lenient(const SkeletonFrame& frame, const JointMap& map);

}  // namespace mocap

#endif  // MOCAP_SKELETON_HPP
