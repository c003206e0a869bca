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

#include "mocap/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "mocap/errors.hpp"

namespace mocap::synth {

namespace {

const std::set<std::string> kDrivable = {
    "knee_right", "knee_left", "ankle_right", "ankle_left",
    "back_pelvis", "back_t8",  "elbow_right", "elbow_left"};

double cycle_value(ProfileShape shape, double amplitude, double phase01) {
  switch (shape) {
    case ProfileShape::sinusoidal:
      return amplitude * 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * phase01));
    case ProfileShape::trapezoid:
      // rise / plateau / fall / rest quarters
      if (phase01 < 0.25) return amplitude * (phase01 / 0.25);
      if (phase01 < 0.50) return amplitude;
      if (phase01 < 0.75) return amplitude * ((0.75 - phase01) / 0.25);
      return 0.0;
  }
  return 0.0;
}

}  // namespace

std::vector<FlexionSeries> generate_trajectory(const MotionProfile& p) {
  if (!(p.amplitude_deg > 0.0) || p.amplitude_deg > 180.0)
    throw Error(Errc::invalid_profile,
                "amplitude must be in (0, 180], got " + std::to_string(p.amplitude_deg));
  if (!(p.period_s > 0.0))
    throw Error(Errc::invalid_profile, "period must be positive");
  if (p.repetitions < 1)
    throw Error(Errc::invalid_profile, "repetitions must be >= 1");
  if (!(p.sample_rate_hz > 0.0))
    throw Error(Errc::invalid_profile, "sample rate must be positive");
  if (p.channels.empty())
    throw Error(Errc::invalid_profile, "no channels driven");
  for (const auto& ch : p.channels)
    if (!kDrivable.count(ch)) throw Error(Errc::unknown_channel, ch);

  // Snap to an even per-cycle sample count so the sinusoid peak lands
  // exactly on a sample (peak = amplitude within 1e-9 holds exactly).
  long per_cycle = std::lround(p.sample_rate_hz * p.period_s);
  per_cycle = std::max<long>(4, per_cycle + (per_cycle % 2));
  const double dt = p.period_s / static_cast<double>(per_cycle);
  const long total = per_cycle * p.repetitions;

  std::vector<double> ts(total + 1), values(total + 1);
  for (long k = 0; k <= total; ++k) {
    ts[k] = static_cast<double>(k) * dt;
    const double phase01 = static_cast<double>(k % per_cycle) / static_cast<double>(per_cycle);
    values[k] = cycle_value(p.shape, p.amplitude_deg, phase01);
  }

  std::vector<FlexionSeries> out;
  out.reserve(p.channels.size());
  for (const auto& ch : p.channels) {
    FlexionSeries s;
    s.channel = ch;
    s.source = SeriesSource::reference_native;
    s.samples.reserve(ts.size());
    for (std::size_t k = 0; k < ts.size(); ++k) s.samples.push_back({ts[k], values[k]});
    out.push_back(std::move(s));
  }
  return out;
}

LimbLengths LimbLengths::defaults() {
  LimbLengths l;
  l.segment_m = {
      {"thigh", 0.45},      {"shank", 0.43},       {"foot", 0.23},
      {"upper_arm", 0.32},  {"forearm", 0.28},     {"lower_back", 0.18},
      {"mid_back", 0.16},   {"upper_back", 0.14},  {"neck_head", 0.22},
      {"hip_half_width", 0.10}, {"shoulder_half_width", 0.18}, {"pelvis_rise", 0.06},
      {"ankle_height", 0.09},
  };
  return l;
}

double LimbLengths::at(const std::string& key) const {
  auto it = segment_m.find(key);
  if (it == segment_m.end())
    throw Error(Errc::invalid_length, "no length for segment '" + key + "'");
  if (!(it->second > 0.0))
    throw Error(Errc::invalid_length,
                "segment '" + key + "' must be positive, got " + std::to_string(it->second));
  return it->second;
}

SkeletonTopology reference_topology() {
  SkeletonTopology t;
  t.name = "reference";
  t.joints = {"pelvis",      "spine_mid",   "t8",          "neck",       "head",
              "left_shoulder", "left_elbow",  "left_wrist",
              "right_shoulder", "right_elbow", "right_wrist",
              "left_hip",    "left_knee",   "left_ankle",  "left_toe",
              "right_hip",   "right_knee",  "right_ankle", "right_toe"};
  t.edges = {{"pelvis", "spine_mid"},      {"spine_mid", "t8"},
             {"t8", "neck"},               {"neck", "head"},
             {"neck", "left_shoulder"},    {"left_shoulder", "left_elbow"},
             {"left_elbow", "left_wrist"}, {"neck", "right_shoulder"},
             {"right_shoulder", "right_elbow"}, {"right_elbow", "right_wrist"},
             {"pelvis", "left_hip"},       {"left_hip", "left_knee"},
             {"left_knee", "left_ankle"},  {"left_ankle", "left_toe"},
             {"pelvis", "right_hip"},      {"right_hip", "right_knee"},
             {"right_knee", "right_ankle"}, {"right_ankle", "right_toe"}};
  t.anchors = {"left_shoulder", "right_shoulder", "left_hip", "right_hip"};
  return t;
}

namespace {

// In-plane (sagittal XZ) direction at `deg` from straight-down, tipping
// forward (+X). World frame: Z up, X forward, Y mediolateral.
Vec3 sagittal_from_down(double deg) {
  const double r = deg2rad(deg);
  return {std::sin(r), 0.0, -std::cos(r)};
}

// Direction at `deg` from straight-up, tipping forward.
Vec3 sagittal_from_up(double deg) {
  const double r = deg2rad(deg);
  return {std::sin(r), 0.0, std::cos(r)};
}

}  // namespace

MotionSequence forward_skeleton(std::span<const FlexionSeries> trajectories,
                                const LimbLengths& limbs, const SkeletonTopology& topology) {
  validate_topology(topology);
  for (const auto& traj : trajectories) {
    if (!kDrivable.count(traj.channel)) throw Error(Errc::unknown_channel, traj.channel);
    if (traj.channel.starts_with("ankle")) {
      for (const auto& s : traj.samples)
        if (s.angle_deg > 90.0 + 1e-9)
          throw Error(Errc::invalid_profile,
                      "ankle flexion above 90 deg is outside the hinge model's "
                      "invertible range (channel " + traj.channel + ")");
    }
  }
  const auto required = reference_topology().joints;
  for (const auto& j : required)
    if (!topology.has_joint(j))
      throw Error(Errc::unknown_channel, "topology '" + topology.name +
                                             "' lacks required joint '" + j + "'");

  // All driven trajectories must share one grid; undriven channels hold 0.
  std::vector<double> ts;
  if (!trajectories.empty()) {
    for (const auto& s : trajectories.front().samples) ts.push_back(s.t);
    for (const auto& traj : trajectories) {
      if (traj.samples.size() != ts.size())
        throw Error(Errc::invalid_profile, "trajectories disagree on the sample grid");
      for (std::size_t k = 0; k < ts.size(); ++k)
        if (std::fabs(traj.samples[k].t - ts[k]) > 1e-12)
          throw Error(Errc::invalid_profile, "trajectories disagree on the sample grid");
    }
  } else {
    ts.push_back(0.0);
  }

  auto angle_at = [&](const char* channel, std::size_t k) -> double {
    for (const auto& traj : trajectories)
      if (traj.channel == channel) return traj.samples[k].angle_deg;
    return 0.0;
  };

  const double thigh = limbs.at("thigh");
  const double shank = limbs.at("shank");
  const double foot = limbs.at("foot");
  const double upper_arm = limbs.at("upper_arm");
  const double forearm = limbs.at("forearm");
  const double lower_back = limbs.at("lower_back");
  const double mid_back = limbs.at("mid_back");
  const double upper_back = limbs.at("upper_back");
  const double neck_head = limbs.at("neck_head");
  const double hip_w = limbs.at("hip_half_width");
  const double shoulder_w = limbs.at("shoulder_half_width");
  const double pelvis_rise = limbs.at("pelvis_rise");
  const double ankle_h = limbs.at("ankle_height");
  const double hip_z = ankle_h + shank + thigh;

  MotionSequence seq;
  seq.topology = topology;
  seq.frames.reserve(ts.size());

  for (std::size_t k = 0; k < ts.size(); ++k) {
    SkeletonFrame f;
    f.t = ts[k];

    auto leg = [&](const char* side_hip, const char* side_knee, const char* side_ankle,
                   const char* side_toe, double lateral, double knee_deg, double ankle_deg) {
      const Vec3 hip(0.0, lateral, hip_z);
      const Vec3 knee = hip + thigh * sagittal_from_down(0.0);  // thigh stays vertical
      const Vec3 shank_dir = sagittal_from_down(knee_deg);
      const Vec3 ankle = knee + shank * shank_dir;
      // Foot: 90° + flexion away from the shank continuation, in plane.
      const Vec3 foot_dir = sagittal_from_down(knee_deg + 90.0 + ankle_deg);
      const Vec3 toe = ankle + foot * foot_dir;
      f.positions.emplace(side_hip, hip);
      f.positions.emplace(side_knee, knee);
      f.positions.emplace(side_ankle, ankle);
      f.positions.emplace(side_toe, toe);
    };
    leg("right_hip", "right_knee", "right_ankle", "right_toe", -hip_w,
        angle_at("knee_right", k), angle_at("ankle_right", k));
    leg("left_hip", "left_knee", "left_ankle", "left_toe", hip_w,
        angle_at("knee_left", k), angle_at("ankle_left", k));

    const double pelvis_deg = angle_at("back_pelvis", k);
    const double t8_deg = angle_at("back_t8", k);
    const Vec3 pelvis(0.0, 0.0, hip_z + pelvis_rise);
    const Vec3 spine_mid = pelvis + lower_back * sagittal_from_up(pelvis_deg);
    const Vec3 t8 = spine_mid + mid_back * sagittal_from_up((pelvis_deg + t8_deg) / 2.0);
    const Vec3 neck = t8 + upper_back * sagittal_from_up(t8_deg);
    const Vec3 head = neck + neck_head * sagittal_from_up(t8_deg);
    f.positions.emplace("pelvis", pelvis);
    f.positions.emplace("spine_mid", spine_mid);
    f.positions.emplace("t8", t8);
    f.positions.emplace("neck", neck);
    f.positions.emplace("head", head);

    auto arm = [&](const char* side_shoulder, const char* side_elbow, const char* side_wrist,
                   double lateral, double elbow_deg) {
      const Vec3 shoulder = neck + Vec3(0.0, lateral, 0.0);
      const Vec3 elbow = shoulder + upper_arm * sagittal_from_down(0.0);  // arm hangs
      const Vec3 wrist = elbow + forearm * sagittal_from_down(elbow_deg);
      f.positions.emplace(side_shoulder, shoulder);
      f.positions.emplace(side_elbow, elbow);
      f.positions.emplace(side_wrist, wrist);
    };
    arm("right_shoulder", "right_elbow", "right_wrist", -shoulder_w, angle_at("elbow_right", k));
    arm("left_shoulder", "left_elbow", "left_wrist", shoulder_w, angle_at("elbow_left", k));

    seq.frames.push_back(std::move(f));
  }
  return seq;
}

namespace {

// Deterministic normal deviates (mt19937_64 + Box-Muller); keeps identical
// seeds bit-identical across standard libraries.
class NormalGen {
public:
  explicit NormalGen(std::uint64_t seed) : rng_(seed) {}

  double next(double sigma) {
    if (has_spare_) {
      has_spare_ = false;
      return spare_ * sigma;
    }
    double u1 = 0.0;
    do {
      u1 = uniform01();
    } while (u1 <= 1e-300);
    const double u2 = uniform01();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    spare_ = mag * std::sin(2.0 * std::numbers::pi * u2);
    has_spare_ = true;
    return mag * std::cos(2.0 * std::numbers::pi * u2) * sigma;
  }

  double uniform01() {
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  }

private:
  std::mt19937_64 rng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace

MotionSequence perturb(const MotionSequence& seq, const Perturbation& p, std::uint64_t seed) {
  if (p.noise_sigma_m < 0.0)
    throw Error(Errc::invalid_profile, "noise sigma must be non-negative");
  if (p.dropout_prob < 0.0 || p.dropout_prob >= 1.0)
    throw Error(Errc::invalid_profile, "dropout probability must be in [0, 1)");
  if (!(p.transform.scale > 0.0))
    throw Error(Errc::invalid_profile, "perturbation scale must be positive");

  NormalGen gen(seed);
  MotionSequence out;
  out.topology = seq.topology;
  out.meta = seq.meta;
  out.frames.reserve(seq.frames.size());
  for (const auto& frame : seq.frames) {
    SkeletonFrame f;
    f.t = frame.t;
    for (const auto& [name, pos] : frame.positions) {
      Vec3 q = p.transform.apply(pos);
      if (p.noise_sigma_m > 0.0) {
        q.x() += gen.next(p.noise_sigma_m);
        q.y() += gen.next(p.noise_sigma_m);
        q.z() += gen.next(p.noise_sigma_m);
      }
      const bool dropped = p.dropout_prob > 0.0 && gen.uniform01() < p.dropout_prob;
      if (!dropped) f.positions.emplace(name, q);
    }
    out.frames.push_back(std::move(f));
  }
  return out;
}

}  // namespace mocap::synth
