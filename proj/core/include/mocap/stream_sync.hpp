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

#ifndef MOCAP_STREAM_SYNC_HPP
#define MOCAP_STREAM_SYNC_HPP

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mocap/kinematics.hpp"
#include "mocap/skeleton.hpp"

namespace mocap {

enum class PairingMethod { exact, nearest, linear };

struct PairedSample {
  double t = 0.0;
  double a_deg = 0.0;
  double b_deg = 0.0;
};

struct PairedSeries {
  std::string channel;
  std::vector<PairedSample> samples;
  PairingMethod method = PairingMethod::linear;
  std::size_t gaps = 0;  // a-samples dropped (outside span / beyond max_gap)
};

/// Pairs series b onto series a's timestamp grid. For each a-sample inside
/// b's span, b's value is interpolated (or the nearest b-sample within
/// max_gap is taken, per method). a-samples outside b's span or farther
/// than max_gap from any b-sample are dropped and counted as gaps.
/// Throws EmptySeries and NoOverlap.
PairedSeries pair_streams(const FlexionSeries& a, const FlexionSeries& b,
                          double max_gap_s, PairingMethod method);

inline constexpr double kDefaultMaxGapSeconds = 0.1;

/// Element-wise |a - b| with timestamps, order preserved.
std::vector<std::pair<double, double>> deviation_series(const PairedSeries& p);

struct DeviationStats {
  double median_deg = 0.0;
  double average_deg = 0.0;
  double maximum_deg = 0.0;
  std::size_t samples = 0;
  std::size_t gaps = 0;
};

/// Median (even count: mean of the two central order statistics),
/// arithmetic mean, and maximum over the raw list.
/// Throws EmptyInput on an empty list.
DeviationStats aggregate(std::span<const double> deviations);

enum class GroupKey { exercise, perspective, clothing };

GroupKey parse_group_key(std::string_view s);
std::string_view group_key_name(GroupKey k);

/// Per-recording deviations for one channel, ready for pooling.
struct RecordingDeviations {
  RecordingMeta meta;
  std::string channel;
  std::vector<double> deviations;
  std::size_t gaps = 0;
};

enum class ComparisonMode { self_consistency, cross_system };

ComparisonMode parse_comparison_mode(std::string_view s);
std::string_view comparison_mode_name(ComparisonMode m);

struct ReportRow {
  std::string channel;
  std::string exercise;  // label, with extra group-key values appended
  DeviationStats stats;
};

struct DeviationReport {
  std::vector<ReportRow> rows;
  ComparisonMode mode = ComparisonMode::self_consistency;
  std::vector<GroupKey> group_keys;
  bool canonicalized_reference = false;
};

/// Pools deviations within each (channel, exercise[, extra keys]) group
/// before aggregating — pooling raw samples, not averaging per-recording
/// stats. Rows are ordered channel-major in the standard joint order.
/// Throws EmptyGroup when a requested key has no values to group on or
/// the input is empty.
DeviationReport group_report(std::span<const RecordingDeviations> recordings,
                             std::span<const GroupKey> group_by,
                             ComparisonMode mode = ComparisonMode::self_consistency);

}  // namespace mocap

#endif  // MOCAP_STREAM_SYNC_HPP
