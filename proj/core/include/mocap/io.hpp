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

#ifndef MOCAP_IO_HPP
#define MOCAP_IO_HPP

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mocap/euler_anomaly.hpp"
#include "mocap/kinematics.hpp"
#include "mocap/skeleton.hpp"
#include "mocap/stream_sync.hpp"

namespace mocap::io {

// ---------------------------------------------------------------------------
// Skeleton streams: line-delimited JSON, one frame per line:
//   {"t": <seconds>, "joints": {"<name>": [x, y, z], ...}}
// coordinates in meters. An optional first line {"meta": {...}} carries the
// recording metadata. Floats are serialized with 9 significant digits.
// ---------------------------------------------------------------------------

struct SkeletonStreamContents {
  std::vector<SkeletonFrame> frames;
  RecordingMeta meta;
  bool had_meta = false;
};

/// Low-level reader: frames + optional meta line, timestamps checked.
/// Throws ParseError (with line number) and TimestampOrder.
SkeletonStreamContents read_skeleton_frames(std::istream& in);
SkeletonStreamContents read_skeleton_frames_file(const std::string& path);

/// Full reader: additionally validates every frame against the topology
/// (MissingJoint names the first absent joint and its line).
MotionSequence read_skeleton_stream(std::istream& in, const SkeletonTopology& topology);
MotionSequence read_skeleton_stream_file(const std::string& path,
                                         const SkeletonTopology& topology);

void write_skeleton_stream(std::ostream& out, const MotionSequence& seq);
void write_skeleton_stream_file(const std::string& path, const MotionSequence& seq);

// ---------------------------------------------------------------------------
// Angle streams: CSV with header `time_s,<channel>,...`, degrees.
// ---------------------------------------------------------------------------

/// One series per non-time column; header names become channel names.
/// Throws ParseError (row-located) and EmptyFile.
std::vector<FlexionSeries> read_angle_stream(std::istream& in);
std::vector<FlexionSeries> read_angle_stream_file(const std::string& path);

/// All series must share one timestamp grid.
void write_angle_stream(std::ostream& out, std::span<const FlexionSeries> series);
void write_angle_stream_file(const std::string& path, std::span<const FlexionSeries> series);

/// Euler stream: CSV with header `time_s,x,y,z` interpreted under the
/// given convention.
EulerSeries read_euler_stream(std::istream& in, const RotationConvention& c);
EulerSeries read_euler_stream_file(const std::string& path, const RotationConvention& c);
void write_euler_stream(std::ostream& out, const EulerSeries& s);
void write_euler_stream_file(const std::string& path, const EulerSeries& s);

// ---------------------------------------------------------------------------
// Config documents: a single JSON document with sections `topology`,
// `map`, `channels`; field names mirror the domain types.
// ---------------------------------------------------------------------------

struct ConfigDocument {
  std::optional<SkeletonTopology> topology;
  std::optional<JointMap> map;
  std::optional<std::vector<JointAngleSpec>> channels;
};

ConfigDocument read_document(std::istream& in);
ConfigDocument read_document_file(const std::string& path);

/// Section-demanding loaders; throw Error(invalid_config) when the section
/// is missing. Loaded topologies and maps are validated.
SkeletonTopology load_topology(const std::string& path);
JointMap load_joint_map(const std::string& path);
std::vector<JointAngleSpec> load_channels(const std::string& path);

void write_document(std::ostream& out, const ConfigDocument& doc);
void write_document_file(const std::string& path, const ConfigDocument& doc);

enum class AlignmentGranularity { per_frame, first_frame };

/// Pipeline configuration; referenced files are loaded and validated
/// eagerly by load_analysis_config.
struct AnalysisConfig {
  std::string reference_topology_path;
  std::string estimated_topology_path;  // optional ("" = same as reference)
  std::string joint_map_path;           // optional ("" = identity by name)
  std::string channels_path;
  RotationConvention convention;
  AlignmentGranularity alignment = AlignmentGranularity::per_frame;
  ComparisonMode mode = ComparisonMode::self_consistency;
  bool canonicalize_reference = false;
  double max_gap_s = kDefaultMaxGapSeconds;
  bool interpolate_reference = true;  // "interpolation_target": "reference"|"estimated"
  std::vector<GroupKey> group_by = {GroupKey::exercise};

  // loaded content
  SkeletonTopology reference_topology;
  std::optional<SkeletonTopology> estimated_topology;
  std::optional<JointMap> joint_map;
  std::vector<JointAngleSpec> channels;
};

AnalysisConfig load_analysis_config(const std::string& path);

// ---------------------------------------------------------------------------
// Reports and plots
// ---------------------------------------------------------------------------

enum class ReportFormat { csv, text_table };

/// CSV columns exactly: joint,exercise,median_deg,average_deg,maximum_deg,
/// samples,gaps — two-decimal degree values, rows in the standard joint
/// order. The text table adds a header block naming mode, grouping, and
/// whether reference canonicalization was applied.
/// Throws EmptyReport.
std::string emit_report(const DeviationReport& report, ReportFormat format);

/// Parses the CSV form back (used for round-trip checks and tooling).
DeviationReport parse_report_csv(const std::string& csv);

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;  // (t seconds, deviation deg)
};

/// SVG line chart: time on x, deviation on y, one polyline per channel,
/// axis labels and a legend. Throws EmptySeries when there is nothing to
/// draw.
std::string emit_plot(std::span<const PlotSeries> series);
void write_plot_file(const std::string& path, std::span<const PlotSeries> series);

}  // namespace mocap::io

#endif  // MOCAP_IO_HPP
