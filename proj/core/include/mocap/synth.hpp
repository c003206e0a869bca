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

#ifndef MOCAP_SYNTH_HPP
#define MOCAP_SYNTH_HPP

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "mocap/kinematics.hpp"
#include "mocap/registration.hpp"
#include "mocap/skeleton.hpp"

namespace mocap::synth {

enum class ProfileShape { sinusoidal, trapezoid };

/// Scripted exercise: every driven channel follows the same cyclic
/// trajectory (trough 0, peak = amplitude), repeated `repetitions` times.
struct MotionProfile {
  ProfileShape shape = ProfileShape::sinusoidal;
  double amplitude_deg = 90.0;   // in (0, 180]; ankles accept at most 90
  double period_s = 2.0;
  int repetitions = 10;
  double sample_rate_hz = 30.0;
  std::vector<std::string> channels = {"knee_right", "knee_left"};
};

/// Ground-truth flexion per driven channel. The per-cycle sample count is
/// round(rate * period) forced even (min 4) so peaks land exactly on
/// samples; the effective rate may differ slightly from the requested one.
/// Throws InvalidProfile on violated invariants.
std::vector<FlexionSeries> generate_trajectory(const MotionProfile& p);

/// Segment lengths in meters for the synthetic subject.
struct LimbLengths {
  std::map<std::string, double> segment_m;

  static LimbLengths defaults();  // ~1.75 m adult
  double at(const std::string& key) const;  // throws InvalidLength if missing/<=0
};

/// The reference topology used by the synthetic generator (also shipped
/// as data/reference.topology.json).
SkeletonTopology reference_topology();

/// Poses a sagittal-plane kinematic chain so that flexion_series on the
/// output reproduces the input trajectories (within 0.1°, exactly in
/// closed form). All driven trajectories must share one timestamp grid.
/// Throws UnknownChannel for channels the chain cannot drive,
/// InvalidLength for missing/non-positive segment lengths, and
/// InvalidProfile for ankle trajectories above 90°.
MotionSequence forward_skeleton(std::span<const FlexionSeries> trajectories,
                                const LimbLengths& limbs,
                                const SkeletonTopology& topology);

/// Camera-pose + body-size + estimation-error model: a similarity
/// transform, isotropic Gaussian position noise, and per-joint dropout.
struct Perturbation {
  RigidTransform transform;     // includes the uniform scale
  double noise_sigma_m = 0.0;   // std-dev per coordinate
  double dropout_prob = 0.0;    // in [0, 1)
};

/// Applies transform and scale to every frame, then adds seeded Gaussian
/// noise per joint coordinate; dropout removes individual joint samples.
/// Deterministic: identical (input, p, seed) gives bit-identical output.
/// With dropout > 0 the output frames may be partial (see
/// MotionSequence::validate).
MotionSequence perturb(const MotionSequence& seq, const Perturbation& p,
                       std::uint64_t seed);

}  // namespace mocap::synth

#endif  // MOCAP_SYNTH_HPP
