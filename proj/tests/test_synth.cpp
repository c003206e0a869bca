#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mocap/kinematics.hpp"
#include "mocap/pipeline.hpp"
#include "mocap/synth.hpp"
#include "support/generators.hpp"

using namespace mocap;

TEST_CASE("generate_trajectory: sinusoid hits exactly N peaks of the amplitude") {
  synth::MotionProfile p;
  p.amplitude_deg = 90.0;
  p.repetitions = 10;
  p.channels = {"knee_right"};
  const auto series = synth::generate_trajectory(p);
  REQUIRE(series.size() == 1);
  const auto& s = series[0].samples;

  int maxima = 0;
  for (std::size_t k = 1; k + 1 < s.size(); ++k)
    if (s[k].angle_deg > s[k - 1].angle_deg && s[k].angle_deg > s[k + 1].angle_deg) {
      ++maxima;
      CHECK(s[k].angle_deg == doctest::Approx(90.0).epsilon(1e-9));
    }
  CHECK(maxima == 10);
  CHECK(s.front().angle_deg == doctest::Approx(0.0));
  CHECK(s.back().angle_deg == doctest::Approx(0.0));
  for (const auto& sample : s) {
    CHECK(sample.angle_deg >= -1e-12);
    CHECK(sample.angle_deg <= 90.0 + 1e-12);
  }
}

TEST_CASE("generate_trajectory rejects invalid profiles") {
  synth::MotionProfile p;
  p.amplitude_deg = 0.0;
  CHECK_THROWS_AS(synth::generate_trajectory(p), Error);
  p.amplitude_deg = 190.0;
  CHECK_THROWS_AS(synth::generate_trajectory(p), Error);
  p.amplitude_deg = 90.0;
  p.repetitions = 0;
  CHECK_THROWS_AS(synth::generate_trajectory(p), Error);
  p.repetitions = 1;
  p.period_s = -1.0;
  CHECK_THROWS_AS(synth::generate_trajectory(p), Error);
  p.period_s = 2.0;
  p.channels = {"hip_twist"};
  CHECK_THROWS_AS(synth::generate_trajectory(p), Error);
}

TEST_CASE("generate_trajectory: trapezoid plateaus equal the amplitude") {
  synth::MotionProfile p;
  p.shape = synth::ProfileShape::trapezoid;
  p.amplitude_deg = 45.0;
  p.repetitions = 3;
  p.sample_rate_hz = 40.0;
  p.channels = {"elbow_left"};
  const auto series = synth::generate_trajectory(p);
  int plateau_samples = 0;
  for (const auto& s : series[0].samples)
    if (s.angle_deg == doctest::Approx(45.0).epsilon(1e-12)) ++plateau_samples;
  CHECK(plateau_samples >= 3 * 10);  // a quarter of each 40-sample cycle
}

TEST_CASE("forward_skeleton: all-zero trajectories give a static straight pose") {
  synth::MotionProfile p;
  p.amplitude_deg = 1.0;
  p.channels = {"knee_right"};
  auto truth = synth::generate_trajectory(p);
  for (auto& s : truth)
    for (auto& sample : s.samples) sample.angle_deg = 0.0;
  const auto seq =
      synth::forward_skeleton(truth, synth::LimbLengths::defaults(), synth::reference_topology());
  CHECK_NOTHROW(seq.validate());
  const auto series = flexion_series(seq, default_channels());
  for (const auto& s : series) {
    if (s.channel.starts_with("back")) continue;
    for (const auto& sample : s.samples) CHECK(std::fabs(sample.angle_deg) < 1e-6);
  }
}

TEST_CASE("forward_skeleton round-trips every drivable channel") {
  synth::MotionProfile p;
  p.amplitude_deg = 75.0;
  p.repetitions = 2;
  p.channels = {"knee_right", "knee_left", "ankle_right", "ankle_left",
                "back_pelvis", "back_t8",  "elbow_right", "elbow_left"};
  const auto truth = synth::generate_trajectory(p);
  const auto seq =
      synth::forward_skeleton(truth, synth::LimbLengths::defaults(), synth::reference_topology());
  const auto recovered = flexion_series(seq, default_channels());
  for (const auto& t : truth) {
    const FlexionSeries* r = nullptr;
    for (const auto& candidate : recovered)
      if (candidate.channel == t.channel) r = &candidate;
    REQUIRE(r != nullptr);
    REQUIRE(r->samples.size() == t.samples.size());
    double worst = 0.0;
    for (std::size_t k = 0; k < t.samples.size(); ++k)
      worst = std::max(worst, std::fabs(r->samples[k].angle_deg - t.samples[k].angle_deg));
    CAPTURE(t.channel);
    CHECK(worst < 0.1);
  }
}

TEST_CASE("forward_skeleton rejects bad inputs") {
  const auto lengths = synth::LimbLengths::defaults();
  const auto topo = synth::reference_topology();

  FlexionSeries bad_channel;
  bad_channel.channel = "wrist_roll";
  bad_channel.samples = {{0.0, 10.0}};
  CHECK_THROWS_AS(
      synth::forward_skeleton(std::vector<FlexionSeries>{bad_channel}, lengths, topo), Error);

  FlexionSeries over_ankle;
  over_ankle.channel = "ankle_left";
  over_ankle.samples = {{0.0, 120.0}};
  try {
    synth::forward_skeleton(std::vector<FlexionSeries>{over_ankle}, lengths, topo);
    FAIL("expected InvalidProfile");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::invalid_profile);
  }

  auto zero_thigh = lengths;
  zero_thigh.segment_m["thigh"] = 0.0;
  FlexionSeries knee;
  knee.channel = "knee_right";
  knee.samples = {{0.0, 10.0}};
  try {
    synth::forward_skeleton(std::vector<FlexionSeries>{knee}, zero_thigh, topo);
    FAIL("expected InvalidLength");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::invalid_length);
  }
}

TEST_CASE("perturb: identity perturbation and determinism") {
  synth::MotionProfile p;
  p.repetitions = 1;
  const auto seq = synth::forward_skeleton(synth::generate_trajectory(p),
                                           synth::LimbLengths::defaults(),
                                           synth::reference_topology());
  const auto same = synth::perturb(seq, synth::Perturbation{}, 1);
  REQUIRE(same.frames.size() == seq.frames.size());
  for (std::size_t k = 0; k < seq.frames.size(); ++k)
    for (const auto& [name, pos] : seq.frames[k].positions)
      CHECK((same.frames[k].positions.at(name) - pos).norm() == 0.0);

  synth::Perturbation noisy;
  noisy.noise_sigma_m = 0.01;
  noisy.dropout_prob = 0.05;
  const auto a = synth::perturb(seq, noisy, 42);
  const auto b = synth::perturb(seq, noisy, 42);
  REQUIRE(a.frames.size() == b.frames.size());
  for (std::size_t k = 0; k < a.frames.size(); ++k) {
    REQUIRE(a.frames[k].positions.size() == b.frames[k].positions.size());
    for (const auto& [name, pos] : a.frames[k].positions) {
      const Vec3& other = b.frames[k].positions.at(name);
      CHECK(pos.x() == other.x());
      CHECK(pos.y() == other.y());
      CHECK(pos.z() == other.z());
    }
  }
  const auto c = synth::perturb(seq, noisy, 43);
  bool any_difference = false;
  for (std::size_t k = 0; k < a.frames.size() && !any_difference; ++k)
    for (const auto& [name, pos] : a.frames[k].positions) {
      auto it = c.frames[k].positions.find(name);
      if (it == c.frames[k].positions.end() || (it->second - pos).norm() > 0.0) {
        any_difference = true;
        break;
      }
    }
  CHECK(any_difference);
}

TEST_CASE("perturb: dropout removes roughly the configured share of joints") {
  synth::MotionProfile p;
  p.repetitions = 3;
  p.sample_rate_hz = 60.0;
  const auto seq = synth::forward_skeleton(synth::generate_trajectory(p),
                                           synth::LimbLengths::defaults(),
                                           synth::reference_topology());
  synth::Perturbation drop;
  drop.dropout_prob = 0.2;
  const auto out = synth::perturb(seq, drop, 7);
  std::size_t total = 0, kept = 0;
  for (std::size_t k = 0; k < seq.frames.size(); ++k) {
    total += seq.frames[k].positions.size();
    kept += out.frames[k].positions.size();
  }
  const double kept_share = static_cast<double>(kept) / static_cast<double>(total);
  CHECK(kept_share > 0.74);
  CHECK(kept_share < 0.86);
}

TEST_CASE("rigid perturbation with zero noise leaves pipeline flexion unchanged") {
  gen::Rng rng(51);
  synth::MotionProfile p;
  p.amplitude_deg = 80.0;
  p.repetitions = 2;
  p.channels = {"knee_right", "knee_left", "back_t8"};
  const auto truth = synth::generate_trajectory(p);
  const auto clean = synth::forward_skeleton(truth, synth::LimbLengths::defaults(),
                                             synth::reference_topology());

  synth::Perturbation pert;
  RotationConvention zxy;
  pert.transform.rotation = euler_to_rotation({0, 0, 90}, zxy);  // 90 about vertical
  pert.transform.translation = Vec3(2, -1, 0.5);
  pert.transform.scale = 1.7;
  const auto moved = synth::perturb(clean, pert, 3);

  const auto aligned = pipeline::align_sequences(moved, clean,
                                                 io::AlignmentGranularity::per_frame, 0.05);
  CHECK(aligned.skipped_frames == 0);
  const auto recovered = flexion_series(aligned.aligned, default_channels());
  const auto baseline = flexion_series(pipeline::normalize_sequence(clean), default_channels());
  for (std::size_t c = 0; c < recovered.size(); ++c) {
    REQUIRE(recovered[c].samples.size() == baseline[c].samples.size());
    for (std::size_t k = 0; k < recovered[c].samples.size(); ++k)
      CHECK(std::fabs(recovered[c].samples[k].angle_deg -
                      baseline[c].samples[k].angle_deg) < 1e-6);
  }
}
