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

#ifndef MOCAP_EULER_ANOMALY_HPP
#define MOCAP_EULER_ANOMALY_HPP

#include <array>
#include <cstddef>
#include <vector>

#include "mocap/registration.hpp"

namespace mocap {

struct EulerSample {
  double t = 0.0;
  EulerAngles angles;
};

struct EulerSeries {
  std::vector<EulerSample> samples;
  RotationConvention convention;
};

/// Angle of the relative rotation between two orientations, degrees [0, 180].
double geodesic_distance(const EulerAngles& a, const EulerAngles& b,
                         const RotationConvention& c);

enum class AnomalyKind { representation_flip, genuine_discontinuity };

struct AnomalyEvent {
  std::size_t index = 0;  // transition from samples[index] to samples[index+1]
  std::array<double, 3> axis_jump_deg{};  // per-axis jump after mod-360 wrapping
  double geodesic_deg = 0.0;  // rotation distance across the transition
  AnomalyKind kind = AnomalyKind::representation_flip;
  double x_before_deg = 0.0;  // x component entering the transition
};

inline constexpr double kDefaultJumpThresholdDeg = 90.0;
// Telemetry can carry >10° of genuine rotation between samples while the
// representation flips branch on top of it, so the flip/genuine cut sits
// above the fastest plausible per-sample motion, not at it.
inline constexpr double kDefaultFlipToleranceDeg = 20.0;

/// A transition is an event iff some axis jumps by >= jump_threshold after
/// mod-360 wrapping. It is a representation flip iff the orientations on
/// both sides are within flip_tolerance of each other (geodesically);
/// otherwise the motion itself is discontinuous.
/// Throws TooShort for series with fewer than 2 samples.
std::vector<AnomalyEvent> detect_flips(const EulerSeries& s,
                                       double jump_threshold_deg = kDefaultJumpThresholdDeg,
                                       double flip_tolerance_deg = kDefaultFlipToleranceDeg);

struct CanonicalizeResult {
  EulerSeries series;
  std::size_t repairs = 0;  // samples whose representation was rewritten
};

/// Rewrites each sample onto the Euler branch closest to its predecessor,
/// choosing among the equivalent representations (±360 unwrapping per axis
/// and the conjugate branch first±180 / complement of middle / last±180)
/// the one minimizing the max per-axis distance to the previous output.
/// Every output sample represents the same rotation as its input; the
/// first sample keeps the principal-range branch.
CanonicalizeResult canonicalize(const EulerSeries& s);

}  // namespace mocap

#endif  // MOCAP_EULER_ANOMALY_HPP
