#include <benchmark/benchmark.h>

#include <random>

#include "mocap/euler_anomaly.hpp"
#include "mocap/kinematics.hpp"
#include "mocap/pipeline.hpp"
#include "mocap/registration.hpp"
#include "mocap/synth.hpp"

using namespace mocap;

namespace {

std::mt19937_64 rng(12345);

double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::vector<LabeledPoint> random_anchors() {
  std::vector<LabeledPoint> pts;
  const char* labels[4] = {"ls", "rs", "lh", "rh"};
  for (int i = 0; i < 4; ++i)
    pts.push_back({labels[i], Vec3(uniform(-1, 1), uniform(-1, 1), uniform(-1, 1))});
  return pts;
}

MotionSequence squat_sequence(int reps) {
  synth::MotionProfile p;
  p.amplitude_deg = 90.0;
  p.repetitions = reps;
  p.sample_rate_hz = 60.0;
  p.channels = {"knee_right", "knee_left", "back_t8"};
  return synth::forward_skeleton(synth::generate_trajectory(p),
                                 synth::LimbLengths::defaults(),
                                 synth::reference_topology());
}

}  // namespace

static void BM_RigidAlign(benchmark::State& state) {
  const auto src = random_anchors();
  const auto tgt = random_anchors();
  for (auto _ : state) {
    auto result = rigid_align(src, tgt);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_RigidAlign);

static void BM_NormalizeFrame(benchmark::State& state) {
  const auto seq = squat_sequence(1);
  const auto& frame = seq.frames.front();
  for (auto _ : state) {
    auto result = normalize(frame);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_NormalizeFrame);

static void BM_EulerRoundTrip(benchmark::State& state) {
  const RotationConvention c;
  const EulerAngles e{uniform(-180, 180), uniform(-80, 80), uniform(-180, 180)};
  for (auto _ : state) {
    auto back = rotation_to_euler(euler_to_rotation(e, c), c);
    benchmark::DoNotOptimize(back);
  }
}
BENCHMARK(BM_EulerRoundTrip);

static void BM_FlexionSeries(benchmark::State& state) {
  const auto seq = squat_sequence(static_cast<int>(state.range(0)));
  const auto channels = default_channels();
  for (auto _ : state) {
    auto series = flexion_series(seq, channels);
    benchmark::DoNotOptimize(series);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(seq.frames.size()));
}
BENCHMARK(BM_FlexionSeries)->Arg(1)->Arg(10);

static void BM_AlignSequences(benchmark::State& state) {
  const auto clean = squat_sequence(static_cast<int>(state.range(0)));
  synth::Perturbation pert;
  pert.transform.rotation = euler_to_rotation({10, 20, 30}, RotationConvention{});
  pert.transform.translation = Vec3(1, 2, 3);
  pert.transform.scale = 1.3;
  const auto moved = synth::perturb(clean, pert, 1);
  for (auto _ : state) {
    auto aligned = pipeline::align_sequences(moved, clean,
                                             io::AlignmentGranularity::per_frame, 0.1);
    benchmark::DoNotOptimize(aligned);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(clean.frames.size()));
}
BENCHMARK(BM_AlignSequences)->Arg(1)->Arg(10);

static void BM_Canonicalize(benchmark::State& state) {
  EulerSeries s;
  s.convention = RotationConvention{};
  for (int k = 0; k < 1000; ++k) {
    EulerAngles e{uniform(-80, 80), uniform(-180, 180), uniform(-180, 180)};
    s.samples.push_back({0.01 * k, e});
  }
  for (auto _ : state) {
    auto repaired = canonicalize(s);
    benchmark::DoNotOptimize(repaired);
  }
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_Canonicalize);

BENCHMARK_MAIN();
