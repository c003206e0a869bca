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

#ifndef MOCAP_KINEMATICS_HPP
#define MOCAP_KINEMATICS_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mocap/geometry.hpp"
#include "mocap/skeleton.hpp"

namespace mocap {

struct Segment {
  JointId from;
  JointId to;
};

/// Hinge-angle channel definition. A channel either measures the angle
/// between two segments (proximal continuation vs distal) or, when
/// `distal` is empty, the inclination of the proximal segment from the
/// world vertical axis. All measurements are taken in the plane that
/// remains after dropping the neutralized axis.
struct JointAngleSpec {
  std::string channel;
  Segment proximal;
  std::optional<Segment> distal;         // empty => vertical-reference channel
  Axis vertical_axis = Axis::Z;          // used only by vertical channels
  Axis neutralized_axis = Axis::Y;       // mediolateral by default (sagittal plane)
  double neutral_offset_deg = 0.0;       // 90 for ankles: foot ⊥ shank = 0°
};

struct FlexionSample {
  double t = 0.0;        // seconds
  double angle_deg = 0;  // in [0, 180]
};

enum class SeriesSource { reference_native, reference_skeleton, estimated_skeleton };

struct FlexionSeries {
  std::string channel;
  std::vector<FlexionSample> samples;
  SeriesSource source = SeriesSource::reference_native;
  std::size_t gaps = 0;  // frames skipped because the channel was degenerate
};

/// Angle in degrees [0, 180] between u and v projected onto the plane with
/// `neutralized` dropped, minus the neutral offset, folded back into
/// [0, 180]. Uses atan2 of the in-plane cross and dot products.
/// Throws DegenerateProjection when either projection has norm <= 1e-9.
double hinge_flexion(const Vec3& u, const Vec3& v, Axis neutralized,
                     double neutral_offset_deg = 0.0);

/// Angle in degrees [0, 180] between the projected segment and the world
/// vertical axis within the retained plane.
/// Throws DegenerateProjection on a vanishing in-plane projection, and
/// Error(invalid_config) when vertical == neutralized.
double vertical_inclination(const Vec3& segment, Axis vertical, Axis neutralized);

/// One series per spec, one sample per frame. Frames where a spec is
/// degenerate (vanishing projection or, after dropout, a missing joint)
/// contribute a gap, not an error. The sequence is expected to be in
/// world-aligned coordinates already.
/// Throws UnknownJoint if a spec references a joint missing from the
/// sequence topology.
std::vector<FlexionSeries> flexion_series(const MotionSequence& seq,
                                          std::span<const JointAngleSpec> specs);

/// The eight default channels (knees, ankles, back x2, elbows) expressed
/// on the reference topology. Shipped as data/default_channels.json too;
/// this is the same set for callers that do not load config files.
std::vector<JointAngleSpec> default_channels();

/// Report row order: knee R, knee L, ankle R, ankle L, back pelvis,
/// back T8, elbow R, elbow L, then unknown channels alphabetically.
int channel_rank(const std::string& channel);

}  // namespace mocap

#endif  // MOCAP_KINEMATICS_HPP
