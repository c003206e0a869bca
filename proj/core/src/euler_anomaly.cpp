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

#include "mocap/euler_anomaly.hpp"

#include <algorithm>
#include <cmath>

#include "mocap/errors.hpp"

namespace mocap {

double geodesic_distance(const EulerAngles& a, const EulerAngles& b,
                         const RotationConvention& c) {
  return rotation_angle_deg(euler_to_rotation(a, c), euler_to_rotation(b, c));
}

std::vector<AnomalyEvent> detect_flips(const EulerSeries& s, double jump_threshold_deg,
                                       double flip_tolerance_deg) {
  if (s.samples.size() < 2)
    throw Error(Errc::too_short, "need at least 2 samples, got " +
                                     std::to_string(s.samples.size()));
  std::vector<AnomalyEvent> events;
  for (std::size_t i = 0; i + 1 < s.samples.size(); ++i) {
    const EulerAngles& a = s.samples[i].angles;
    const EulerAngles& b = s.samples[i + 1].angles;
    const std::array<double, 3> jump = {
        fold_half_turn(b.x_deg - a.x_deg),
        fold_half_turn(b.y_deg - a.y_deg),
        fold_half_turn(b.z_deg - a.z_deg),
    };
    if (*std::max_element(jump.begin(), jump.end()) < jump_threshold_deg) continue;

    AnomalyEvent e;
    e.index = i;
    e.axis_jump_deg = jump;
    e.geodesic_deg = geodesic_distance(a, b, s.convention);
    e.kind = e.geodesic_deg <= flip_tolerance_deg ? AnomalyKind::representation_flip
                                                  : AnomalyKind::genuine_discontinuity;
    e.x_before_deg = a.x_deg;
    events.push_back(e);
  }
  return events;
}

namespace {

// The two Euler triples (a, m, c) and (a±180, ±180∓m ... i.e. the
// complement branch) describe the same rotation for every Tait-Bryan
// order; with per-axis ±360 unwrapping they enumerate all equivalent
// representations reachable without changing the rotation.
EulerAngles conjugate_branch(const EulerAngles& e, const RotationConvention& c) {
  EulerAngles out = e;
  out.component(c.order[0]) = e.component(c.order[0]) + 180.0;
  out.component(c.order[1]) = 180.0 - e.component(c.order[1]);
  out.component(c.order[2]) = e.component(c.order[2]) + 180.0;
  return out;
}

double unwrap_towards(double value, double anchor) {
  return value + 360.0 * std::round((anchor - value) / 360.0);
}

EulerAngles unwrap_all(const EulerAngles& e, const EulerAngles& anchor) {
  return {unwrap_towards(e.x_deg, anchor.x_deg), unwrap_towards(e.y_deg, anchor.y_deg),
          unwrap_towards(e.z_deg, anchor.z_deg)};
}

double max_axis_distance(const EulerAngles& a, const EulerAngles& b) {
  return std::max({std::fabs(a.x_deg - b.x_deg), std::fabs(a.y_deg - b.y_deg),
                   std::fabs(a.z_deg - b.z_deg)});
}

bool same_triple(const EulerAngles& a, const EulerAngles& b) {
  return max_axis_distance(a, b) < 1e-9;
}

bool is_principal(const EulerAngles& e, const RotationConvention& c) {
  auto in_range = [](double v) { return v > -180.0 && v <= 180.0; };
  const double middle = e.component(c.order[1]);
  return in_range(e.x_deg) && in_range(e.y_deg) && in_range(e.z_deg) &&
         middle >= -90.0 && middle <= 90.0;
}

}  // namespace

CanonicalizeResult canonicalize(const EulerSeries& s) {
  CanonicalizeResult out;
  out.series.convention = s.convention;
  out.series.samples.reserve(s.samples.size());
  if (s.samples.empty()) return out;

  // First sample: principal-range branch (middle angle in [-90, 90]),
  // kept bit-identical when the input already satisfies it.
  const EulerAngles first_in = s.samples.front().angles;
  EulerAngles prev = first_in;
  if (!is_principal(first_in, s.convention)) {
    prev = rotation_to_euler(euler_to_rotation(first_in, s.convention), s.convention).angles;
    ++out.repairs;
  }
  out.series.samples.push_back({s.samples.front().t, prev});

  for (std::size_t i = 1; i < s.samples.size(); ++i) {
    const EulerAngles& raw = s.samples[i].angles;
    const EulerAngles same = unwrap_all(raw, prev);
    const EulerAngles conj = unwrap_all(conjugate_branch(raw, s.convention), prev);
    // Prefer the input's own branch on ties so the pass is idempotent.
    const EulerAngles chosen =
        max_axis_distance(conj, prev) < max_axis_distance(same, prev) ? conj : same;
    out.series.samples.push_back({s.samples[i].t, chosen});
    if (!same_triple(chosen, raw)) ++out.repairs;
    prev = chosen;
  }
  return out;
}

}  // namespace mocap
