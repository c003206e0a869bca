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

#include "mocap/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "mocap/errors.hpp"

namespace mocap {

namespace {

constexpr double kProjectionEps = 1e-9;

struct Planar {
  double u, v;  // components on the retained axes
  double norm() const { return std::hypot(u, v); }
};

Planar project(const Vec3& p, Axis neutralized) {
  const auto [a, b] = retained_axes(neutralized);
  return {p[a], p[b]};
}

double planar_angle_deg(const Planar& a, const Planar& b) {
  const double cross = a.u * b.v - a.v * b.u;
  const double dot = a.u * b.u + a.v * b.v;
  return rad2deg(std::atan2(std::fabs(cross), dot));  // in [0, 180]
}

}  // namespace

double hinge_flexion(const Vec3& u, const Vec3& v, Axis neutralized,
                     double neutral_offset_deg) {
  const Planar pu = project(u, neutralized);
  const Planar pv = project(v, neutralized);
  if (pu.norm() <= kProjectionEps || pv.norm() <= kProjectionEps)
    throw Error(Errc::degenerate_projection,
                "segment parallel to the neutralized " +
                    std::string(axis_name(neutralized)) + " axis");
  return fold_half_turn(planar_angle_deg(pu, pv) - neutral_offset_deg);
}

double vertical_inclination(const Vec3& segment, Axis vertical, Axis neutralized) {
  if (vertical == neutralized)
    throw Error(Errc::invalid_config, "vertical axis cannot be the neutralized axis");
  const Planar ps = project(segment, neutralized);
  if (ps.norm() <= kProjectionEps)
    throw Error(Errc::degenerate_projection,
                "segment parallel to the neutralized " +
                    std::string(axis_name(neutralized)) + " axis");
  const Planar pv = project(axis_unit(vertical), neutralized);
  return planar_angle_deg(ps, pv);
}

namespace {

const Vec3* find_position(const SkeletonFrame& f, const JointId& j) {
  auto it = f.positions.find(j);
  return it == f.positions.end() ? nullptr : &it->second;
}

}  // namespace

std::vector<FlexionSeries> flexion_series(const MotionSequence& seq,
                                          std::span<const JointAngleSpec> specs) {
  for (const auto& spec : specs) {
    for (const auto& j : {spec.proximal.from, spec.proximal.to}) {
      if (!seq.topology.has_joint(j)) throw Error(Errc::unknown_joint, j);
    }
    if (spec.distal) {
      for (const auto& j : {spec.distal->from, spec.distal->to})
        if (!seq.topology.has_joint(j)) throw Error(Errc::unknown_joint, j);
    }
  }

  std::vector<FlexionSeries> out;
  out.reserve(specs.size());
  for (const auto& spec : specs) {
    FlexionSeries series;
    series.channel = spec.channel;
    series.source = SeriesSource::reference_skeleton;
    series.samples.reserve(seq.frames.size());
    for (const auto& frame : seq.frames) {
      const Vec3* pf = find_position(frame, spec.proximal.from);
      const Vec3* pt = find_position(frame, spec.proximal.to);
      const Vec3* df = spec.distal ? find_position(frame, spec.distal->from) : nullptr;
      const Vec3* dt = spec.distal ? find_position(frame, spec.distal->to) : nullptr;
      if (!pf || !pt || (spec.distal && (!df || !dt))) {
        ++series.gaps;  // dropout: joint missing in this frame
        continue;
      }
      try {
        double angle;
        if (spec.distal) {
          // Proximal-direction continuation vs distal segment: straight
          // limb (parallel segments) reads 0°.
          angle = hinge_flexion(*pt - *pf, *dt - *df, spec.neutralized_axis,
                                spec.neutral_offset_deg);
        } else {
          angle = vertical_inclination(*pt - *pf, spec.vertical_axis,
                                       spec.neutralized_axis);
        }
        series.samples.push_back({frame.t, angle});
      } catch (const Error& e) {
        if (e.code() != Errc::degenerate_projection) throw;
        ++series.gaps;
      }
    }
    out.push_back(std::move(series));
  }
  return out;
}

std::vector<JointAngleSpec> default_channels() {
  std::vector<JointAngleSpec> specs;
  auto hinge = [&](const char* name, const char* pf, const char* pt, const char* df,
                   const char* dt, double offset) {
    JointAngleSpec s;
    s.channel = name;
    s.proximal = {pf, pt};
    s.distal = Segment{df, dt};
    s.neutral_offset_deg = offset;
    specs.push_back(std::move(s));
  };
  auto vertical = [&](const char* name, const char* pf, const char* pt) {
    JointAngleSpec s;
    s.channel = name;
    s.proximal = {pf, pt};
    specs.push_back(std::move(s));
  };
  hinge("knee_right", "right_hip", "right_knee", "right_knee", "right_ankle", 0.0);
  hinge("knee_left", "left_hip", "left_knee", "left_knee", "left_ankle", 0.0);
  hinge("ankle_right", "right_knee", "right_ankle", "right_ankle", "right_toe", 90.0);
  hinge("ankle_left", "left_knee", "left_ankle", "left_ankle", "left_toe", 90.0);
  vertical("back_pelvis", "pelvis", "spine_mid");
  vertical("back_t8", "t8", "neck");
  hinge("elbow_right", "right_shoulder", "right_elbow", "right_elbow", "right_wrist", 0.0);
  hinge("elbow_left", "left_shoulder", "left_elbow", "left_elbow", "left_wrist", 0.0);
  return specs;
}

int channel_rank(const std::string& channel) {
  static const std::vector<std::string> order = {
      "knee_right", "knee_left", "ankle_right", "ankle_left",
      "back_pelvis", "back_t8",  "elbow_right", "elbow_left"};
  auto it = std::find(order.begin(), order.end(), channel);
  return it == order.end() ? static_cast<int>(order.size())
                           : static_cast<int>(it - order.begin());
}

}  // namespace mocap
