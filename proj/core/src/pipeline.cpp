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

#include "mocap/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "mocap/errors.hpp"
#include "mocap/euler_anomaly.hpp"

namespace mocap::pipeline {

namespace {

// Nearest target frame index within max_gap, or -1.
std::ptrdiff_t nearest_frame(const std::vector<SkeletonFrame>& frames, double t,
                             double max_gap_s) {
  if (frames.empty()) return -1;
  auto it = std::lower_bound(frames.begin(), frames.end(), t,
                             [](const SkeletonFrame& f, double value) { return f.t < value; });
  std::ptrdiff_t best = -1;
  double best_d = max_gap_s;
  if (it != frames.end() && std::fabs(it->t - t) <= best_d) {
    best = it - frames.begin();
    best_d = std::fabs(it->t - t);
  }
  if (it != frames.begin()) {
    auto prev = std::prev(it);
    if (std::fabs(prev->t - t) <= best_d) best = prev - frames.begin();
  }
  return best;
}

std::vector<LabeledPoint> anchor_points(const SkeletonFrame& f, const Anchors& anchors,
                                        bool* complete) {
  std::vector<LabeledPoint> pts;
  *complete = true;
  for (const auto& name : anchors.as_list()) {
    auto it = f.positions.find(name);
    if (it == f.positions.end()) {
      *complete = false;
      return pts;
    }
    pts.push_back({name, it->second});
  }
  return pts;
}

}  // namespace

MotionSequence normalize_sequence(const MotionSequence& seq) {
  MotionSequence out;
  out.topology = seq.topology;
  out.meta = seq.meta;
  out.frames.reserve(seq.frames.size());
  for (const auto& f : seq.frames) out.frames.push_back(normalize(f).frame);
  return out;
}

MotionSequence map_sequence(const MotionSequence& seq, const JointMap& map,
                            const SkeletonTopology& target) {
  MotionSequence out;
  out.topology = target;
  out.meta = seq.meta;
  out.frames.reserve(seq.frames.size());
  for (const auto& f : seq.frames) out.frames.push_back(map_topology_lenient(f, map));
  return out;
}

AlignOutcome align_sequences(const MotionSequence& source, const MotionSequence& target,
                             io::AlignmentGranularity granularity, double max_gap_s) {
  AlignOutcome out;
  out.aligned.topology = source.topology;
  out.aligned.meta = source.meta;

  bool have_first = false;
  RigidTransform first_transform;

  for (const auto& frame : source.frames) {
    NormalizeResult norm_src;
    try {
      norm_src = normalize(frame);
    } catch (const Error& e) {
      if (e.code() != Errc::degenerate_frame) throw;
      ++out.skipped_frames;
      continue;
    }

    if (granularity == io::AlignmentGranularity::first_frame && have_first) {
      out.aligned.frames.push_back(apply_transform(norm_src.frame, first_transform));
      continue;
    }

    const std::ptrdiff_t ti = nearest_frame(target.frames, frame.t, max_gap_s);
    if (ti < 0) {
      ++out.skipped_frames;
      continue;
    }
    NormalizeResult norm_tgt;
    try {
      norm_tgt = normalize(target.frames[ti]);
    } catch (const Error& e) {
      if (e.code() != Errc::degenerate_frame) throw;
      ++out.skipped_frames;
      continue;
    }

    bool src_ok = false, tgt_ok = false;
    const auto src_anchors = anchor_points(norm_src.frame, source.topology.anchors, &src_ok);
    const auto tgt_anchors = anchor_points(norm_tgt.frame, target.topology.anchors, &tgt_ok);
    if (!src_ok || !tgt_ok) {
      ++out.skipped_frames;
      continue;
    }

    RigidTransform t;
    try {
      t = rigid_align(src_anchors, tgt_anchors, /*with_scale=*/false).transform;
    } catch (const Error& e) {
      if (e.code() != Errc::collinear_anchors) throw;
      ++out.skipped_frames;
      continue;
    }
    out.aligned.frames.push_back(apply_transform(norm_src.frame, t));
    if (!have_first) {
      first_transform = t;
      have_first = true;
    }
  }
  return out;
}

std::size_t canonicalize_reference_channels(std::vector<FlexionSeries>& channels,
                                            const RotationConvention& convention) {
  // Channels named <seg>_x / <seg>_y / <seg>_z with a common grid form an
  // orientation triple; everything else is a scalar angle and passes through.
  std::map<std::string, std::array<FlexionSeries*, 3>> triples;
  for (auto& s : channels) {
    if (s.channel.size() < 3) continue;
    const char suffix = s.channel.back();
    if (s.channel[s.channel.size() - 2] != '_') continue;
    int idx = -1;
    if (suffix == 'x') idx = 0;
    else if (suffix == 'y') idx = 1;
    else if (suffix == 'z') idx = 2;
    if (idx < 0) continue;
    triples[s.channel.substr(0, s.channel.size() - 2)][idx] = &s;
  }

  std::size_t rewritten = 0;
  for (auto& [seg, parts] : triples) {
    if (!parts[0] || !parts[1] || !parts[2]) continue;
    const std::size_t n = parts[0]->samples.size();
    if (parts[1]->samples.size() != n || parts[2]->samples.size() != n) continue;

    EulerSeries es;
    es.convention = convention;
    es.samples.reserve(n);
    for (std::size_t k = 0; k < n; ++k)
      es.samples.push_back({parts[0]->samples[k].t,
                            {parts[0]->samples[k].angle_deg, parts[1]->samples[k].angle_deg,
                             parts[2]->samples[k].angle_deg}});
    const auto repaired = canonicalize(es);
    if (repaired.repairs == 0) continue;
    for (std::size_t k = 0; k < n; ++k) {
      parts[0]->samples[k].angle_deg = repaired.series.samples[k].angles.x_deg;
      parts[1]->samples[k].angle_deg = repaired.series.samples[k].angles.y_deg;
      parts[2]->samples[k].angle_deg = repaired.series.samples[k].angles.z_deg;
    }
    rewritten += 3;
  }
  return rewritten;
}

CompareOutcome run_compare(std::span<const RecordingData> recordings,
                           std::span<const JointAngleSpec> channels,
                           const JointMap* estimated_map,
                           const SkeletonTopology& reference_topology, ComparisonMode mode,
                           std::span<const GroupKey> group_by, const PipelineOptions& options) {
  if (recordings.empty()) throw Error(Errc::empty_group, "no recordings");

  CompareOutcome outcome;
  std::vector<RecordingDeviations> pooled;

  for (const auto& rec : recordings) {
    // 1. Map the subject stream onto the comparison topology.
    MotionSequence subject = rec.skeleton;
    if (estimated_map) subject = map_sequence(subject, *estimated_map, reference_topology);

    // 2/3. Normalize and (cross-system) rigidly align onto the reference.
    std::size_t alignment_gaps = 0;
    if (mode == ComparisonMode::cross_system) {
      if (!rec.has_reference_skeleton)
        throw Error(Errc::invalid_config,
                    "cross-system comparison needs a reference skeleton stream");
      auto aligned = align_sequences(subject, rec.reference_skeleton, options.alignment,
                                     options.max_gap_s);
      alignment_gaps = aligned.skipped_frames;
      subject = std::move(aligned.aligned);
    } else {
      // self-consistency: normalization only; degenerate frames become gaps
      MotionSequence normalized;
      normalized.topology = subject.topology;
      normalized.meta = subject.meta;
      for (const auto& frame : subject.frames) {
        try {
          normalized.frames.push_back(normalize(frame).frame);
        } catch (const Error& e) {
          if (e.code() != Errc::degenerate_frame) throw;
          ++alignment_gaps;
        }
      }
      subject = std::move(normalized);
    }

    // 4. Flexion angles from the (aligned) skeleton.
    auto computed = flexion_series(subject, channels);
    for (auto& series : computed)
      series.source = mode == ComparisonMode::cross_system ? SeriesSource::estimated_skeleton
                                                           : SeriesSource::reference_skeleton;

    // 5. Optionally repair the native reference stream before pairing.
    std::vector<FlexionSeries> reference = rec.reference_angles;
    if (options.canonicalize_reference)
      outcome.canonicalized_channels +=
          canonicalize_reference_channels(reference, options.convention);

    // 6. Pair and difference per channel.
    std::vector<ChannelDeviations> rec_devs;
    for (const auto& series : computed) {
      const FlexionSeries* native = nullptr;
      for (const auto& r : reference)
        if (r.channel == series.channel) {
          native = &r;
          break;
        }
      if (!native) continue;  // channel not present in the native export

      ChannelDeviations cd;
      cd.channel = series.channel;
      cd.gaps = series.gaps + alignment_gaps;
      if (!series.samples.empty() && !native->samples.empty()) {
        const auto paired = options.interpolate_reference
                                ? pair_streams(series, *native, options.max_gap_s,
                                               options.pairing)
                                : pair_streams(*native, series, options.max_gap_s,
                                               options.pairing);
        cd.deviations = deviation_series(paired);
        cd.gaps += paired.gaps;
      }
      rec_devs.push_back(std::move(cd));
    }

    for (const auto& cd : rec_devs) {
      RecordingDeviations rd;
      rd.meta = rec.skeleton.meta;
      rd.channel = cd.channel;
      rd.gaps = cd.gaps;
      rd.deviations.reserve(cd.deviations.size());
      for (const auto& [t, d] : cd.deviations) rd.deviations.push_back(d);
      pooled.push_back(std::move(rd));
    }
    outcome.per_recording.push_back(std::move(rec_devs));
  }

  outcome.report = group_report(pooled, group_by, mode);
  outcome.report.canonicalized_reference = options.canonicalize_reference;
  return outcome;
}

}  // namespace mocap::pipeline
