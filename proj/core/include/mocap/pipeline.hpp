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

#ifndef MOCAP_PIPELINE_HPP
#define MOCAP_PIPELINE_HPP

#include <map>
#include <span>
#include <string>
#include <vector>

#include "mocap/io.hpp"
#include "mocap/kinematics.hpp"
#include "mocap/registration.hpp"
#include "mocap/skeleton.hpp"
#include "mocap/stream_sync.hpp"

namespace mocap::pipeline {

struct PipelineOptions {
  io::AlignmentGranularity alignment = io::AlignmentGranularity::per_frame;
  double max_gap_s = kDefaultMaxGapSeconds;
  PairingMethod pairing = PairingMethod::linear;
  // reference is the interpolation target by default (estimated grids are
  // typically sparser); flip to interpolate the computed stream instead
  bool interpolate_reference = true;
  bool canonicalize_reference = false;
  RotationConvention convention;
};

struct AlignOutcome {
  MotionSequence aligned;
  std::size_t skipped_frames = 0;  // no time-matched target or missing anchors
};

/// Normalizes both sequences per frame and maps each source frame onto its
/// time-matched target frame via the anchor joints (normalize -> align).
/// per_frame solves one registration per frame; first_frame reuses the
/// first frame's transform.
AlignOutcome align_sequences(const MotionSequence& source, const MotionSequence& target,
                             io::AlignmentGranularity granularity, double max_gap_s);

/// Normalizes every frame of a sequence in place (no rotation).
MotionSequence normalize_sequence(const MotionSequence& seq);

/// Maps a whole sequence into the target topology (lenient per frame:
/// dropout gaps propagate instead of failing).
MotionSequence map_sequence(const MotionSequence& seq, const JointMap& map,
                            const SkeletonTopology& target);

/// One recording's worth of comparison input, already in memory.
struct RecordingData {
  MotionSequence skeleton;                 // the stream angles are computed from
  MotionSequence reference_skeleton;       // alignment target (cross-system only)
  std::vector<FlexionSeries> reference_angles;
  bool has_reference_skeleton = false;
};

struct ChannelDeviations {
  std::string channel;
  std::vector<std::pair<double, double>> deviations;  // (t, |a-b| deg)
  std::size_t gaps = 0;
};

struct CompareOutcome {
  DeviationReport report;
  // per recording, per channel deviation time-series (plot input)
  std::vector<std::vector<ChannelDeviations>> per_recording;
  std::size_t canonicalized_channels = 0;
};

/// Full comparison over a set of recordings: map -> normalize -> align ->
/// flexion -> pair -> deviations -> pooled report. In self-consistency
/// mode the skeleton stream is both subject and target (no alignment
/// needed beyond normalization).
CompareOutcome run_compare(std::span<const RecordingData> recordings,
                           std::span<const JointAngleSpec> channels,
                           const JointMap* estimated_map,
                           const SkeletonTopology& reference_topology,
                           ComparisonMode mode,
                           std::span<const GroupKey> group_by,
                           const PipelineOptions& options);

/// Canonicalizes every x/y/z euler-triple group among the reference angle
/// channels (columns named <seg>_x, <seg>_y, <seg>_z); scalar channels
/// pass through. Returns the number of channels rewritten.
std::size_t canonicalize_reference_channels(std::vector<FlexionSeries>& channels,
                                            const RotationConvention& convention);

}  // namespace mocap::pipeline

#endif  // MOCAP_PIPELINE_HPP
