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

#include "mocap/io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "mocap/errors.hpp"

namespace mocap::io {

using nlohmann::json;

namespace {

std::string format_g9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::parse_error, "cannot open '" + path + "'");
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::parse_error, "cannot write '" + path + "'");
  return out;
}

double require_finite(const json& j, std::size_t line, const char* what) {
  if (!j.is_number())
    throw ParseError(line, std::string(what) + " is not a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(line, std::string(what) + " is not finite");
  return v;
}

RecordingMeta parse_meta(const json& m, std::size_t line) {
  RecordingMeta meta;
  if (!m.is_object()) throw ParseError(line, "meta is not an object");
  if (m.contains("subject")) meta.subject = m.at("subject").get<std::string>();
  if (m.contains("exercise")) meta.exercise = Exercise::parse(m.at("exercise").get<std::string>());
  if (m.contains("camera_perspective_deg"))
    meta.camera_perspective_deg = require_finite(m.at("camera_perspective_deg"), line,
                                                 "camera_perspective_deg");
  if (m.contains("clothing")) meta.clothing = m.at("clothing").get<std::string>();
  if (m.contains("repetitions")) {
    meta.repetitions = m.at("repetitions").get<int>();
    if (meta.repetitions < 1) throw ParseError(line, "repetitions must be >= 1");
  }
  return meta;
}

json meta_to_json(const RecordingMeta& meta) {
  json m;
  m["subject"] = meta.subject;
  m["exercise"] = meta.exercise.name();
  m["camera_perspective_deg"] = meta.camera_perspective_deg;
  m["clothing"] = meta.clothing;
  m["repetitions"] = meta.repetitions;
  return m;
}

}  // namespace

SkeletonStreamContents read_skeleton_frames(std::istream& in) {
  SkeletonStreamContents out;
  std::string line;
  std::size_t lineno = 0;
  double prev_t = -std::numeric_limits<double>::infinity();
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(lineno, e.what());
    }
    if (!j.is_object()) throw ParseError(lineno, "frame is not an object");
    if (j.contains("meta")) {
      if (lineno != 1 || out.had_meta)
        throw ParseError(lineno, "meta line allowed only as the first line");
      out.meta = parse_meta(j.at("meta"), lineno);
      out.had_meta = true;
      continue;
    }
    if (!j.contains("t") || !j.contains("joints"))
      throw ParseError(lineno, "frame needs 't' and 'joints'");
    SkeletonFrame f;
    f.t = require_finite(j.at("t"), lineno, "t");
    if (!(f.t > prev_t))
      throw Error(Errc::timestamp_order,
                  "line " + std::to_string(lineno) + ": t=" + format_g9(f.t) +
                      " does not increase past " + format_g9(prev_t));
    prev_t = f.t;
    const json& joints = j.at("joints");
    if (!joints.is_object() || joints.empty())
      throw ParseError(lineno, "'joints' must be a non-empty object");
    for (const auto& [name, coords] : joints.items()) {
      if (!coords.is_array() || coords.size() != 3)
        throw ParseError(lineno, "joint '" + name + "' needs [x, y, z]");
      Vec3 p;
      for (int i = 0; i < 3; ++i)
        p[i] = require_finite(coords[i], lineno, ("coordinate of '" + name + "'").c_str());
      f.positions.emplace(name, p);
    }
    out.frames.push_back(std::move(f));
  }
  return out;
}

SkeletonStreamContents read_skeleton_frames_file(const std::string& path) {
  auto in = open_input(path);
  return read_skeleton_frames(in);
}

MotionSequence read_skeleton_stream(std::istream& in, const SkeletonTopology& topology) {
  auto contents = read_skeleton_frames(in);
  MotionSequence seq;
  seq.topology = topology;
  seq.meta = contents.meta;
  seq.frames = std::move(contents.frames);
  const std::size_t meta_offset = contents.had_meta ? 1 : 0;
  for (std::size_t i = 0; i < seq.frames.size(); ++i) {
    for (const auto& j : topology.joints) {
      if (!seq.frames[i].positions.count(j))
        throw Error(Errc::missing_joint,
                    j + " absent on line " + std::to_string(i + 1 + meta_offset));
    }
  }
  return seq;
}

MotionSequence read_skeleton_stream_file(const std::string& path,
                                         const SkeletonTopology& topology) {
  auto in = open_input(path);
  return read_skeleton_stream(in, topology);
}

void write_skeleton_stream(std::ostream& out, const MotionSequence& seq) {
  const RecordingMeta def;
  const auto& m = seq.meta;
  const bool default_meta = m.subject == def.subject && m.exercise == def.exercise &&
                            m.camera_perspective_deg == def.camera_perspective_deg &&
                            m.clothing == def.clothing && m.repetitions == def.repetitions;
  if (!default_meta) out << json({{"meta", meta_to_json(m)}}).dump() << "\n";
  for (const auto& f : seq.frames) {
    out << "{\"t\": " << format_g9(f.t) << ", \"joints\": {";
    bool first = true;
    // Topology order keeps writes deterministic and diff-friendly.
    for (const auto& name : seq.topology.joints) {
      auto it = f.positions.find(name);
      if (it == f.positions.end()) continue;
      if (!first) out << ", ";
      first = false;
      out << json(name).dump() << ": [" << format_g9(it->second.x()) << ", "
          << format_g9(it->second.y()) << ", " << format_g9(it->second.z()) << "]";
    }
    out << "}}\n";
  }
}

void write_skeleton_stream_file(const std::string& path, const MotionSequence& seq) {
  auto out = open_output(path);
  write_skeleton_stream(out, seq);
}

// ---------------------------------------------------------------------------
// CSV angle streams
// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(current);
      current.clear();
    } else if (c != '\r') {
      current += c;
    }
  }
  fields.push_back(current);
  return fields;
}

double parse_csv_number(const std::string& field, std::size_t row, const std::string& col) {
  try {
    std::size_t consumed = 0;
    const double v = std::stod(field, &consumed);
    if (consumed != field.size())
      throw ParseError(row, "trailing characters in '" + field + "' (column " + col + ")");
    if (!std::isfinite(v))
      throw ParseError(row, "non-finite value in column " + col);
    return v;
  } catch (const std::invalid_argument&) {
    throw ParseError(row, "not a number: '" + field + "' (column " + col + ")");
  } catch (const std::out_of_range&) {
    throw ParseError(row, "out of range: '" + field + "' (column " + col + ")");
  }
}

}  // namespace

std::vector<FlexionSeries> read_angle_stream(std::istream& in) {
  std::string line;
  std::size_t row = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    header = split_csv_row(line);
    break;
  }
  if (header.empty()) throw Error(Errc::empty_file, "no header row");
  if (header.front() != "time_s")
    throw ParseError(row, "header must start with 'time_s', got '" + header.front() + "'");
  if (header.size() < 2) throw ParseError(row, "no channel columns in header");

  std::vector<FlexionSeries> series(header.size() - 1);
  for (std::size_t c = 1; c < header.size(); ++c) {
    if (header[c].empty()) throw ParseError(row, "empty channel name in header");
    series[c - 1].channel = header[c];
    series[c - 1].source = SeriesSource::reference_native;
  }

  double prev_t = -std::numeric_limits<double>::infinity();
  bool any = false;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const auto fields = split_csv_row(line);
    if (fields.size() != header.size())
      throw ParseError(row, "expected " + std::to_string(header.size()) + " fields, got " +
                                std::to_string(fields.size()));
    const double t = parse_csv_number(fields[0], row, "time_s");
    if (!(t > prev_t))
      throw Error(Errc::timestamp_order, "row " + std::to_string(row) + ": time does not increase");
    prev_t = t;
    for (std::size_t c = 1; c < fields.size(); ++c)
      series[c - 1].samples.push_back({t, parse_csv_number(fields[c], row, header[c])});
    any = true;
  }
  if (!any) throw Error(Errc::empty_file, "no data rows");
  return series;
}

std::vector<FlexionSeries> read_angle_stream_file(const std::string& path) {
  auto in = open_input(path);
  return read_angle_stream(in);
}

void write_angle_stream(std::ostream& out, std::span<const FlexionSeries> series) {
  if (series.empty()) throw Error(Errc::empty_series, "no channels to write");
  const auto& grid = series.front().samples;
  for (const auto& s : series) {
    if (s.samples.size() != grid.size())
      throw Error(Errc::invalid_config, "channels disagree on the sample grid");
    for (std::size_t k = 0; k < grid.size(); ++k)
      if (std::fabs(s.samples[k].t - grid[k].t) > 1e-12)
        throw Error(Errc::invalid_config, "channels disagree on the sample grid");
  }
  out << "time_s";
  for (const auto& s : series) out << "," << s.channel;
  out << "\n";
  for (std::size_t k = 0; k < grid.size(); ++k) {
    out << format_g9(grid[k].t);
    for (const auto& s : series) out << "," << format_g9(s.samples[k].angle_deg);
    out << "\n";
  }
}

void write_angle_stream_file(const std::string& path, std::span<const FlexionSeries> series) {
  auto out = open_output(path);
  write_angle_stream(out, series);
}

EulerSeries read_euler_stream(std::istream& in, const RotationConvention& c) {
  auto channels = read_angle_stream(in);
  const FlexionSeries* x = nullptr;
  const FlexionSeries* y = nullptr;
  const FlexionSeries* z = nullptr;
  for (const auto& s : channels) {
    if (s.channel == "x") x = &s;
    else if (s.channel == "y") y = &s;
    else if (s.channel == "z") z = &s;
  }
  if (!x || !y || !z)
    throw Error(Errc::parse_error, "euler stream needs columns x, y, z");
  EulerSeries out;
  out.convention = c;
  out.samples.reserve(x->samples.size());
  for (std::size_t k = 0; k < x->samples.size(); ++k)
    out.samples.push_back({x->samples[k].t,
                           {x->samples[k].angle_deg, y->samples[k].angle_deg,
                            z->samples[k].angle_deg}});
  return out;
}

EulerSeries read_euler_stream_file(const std::string& path, const RotationConvention& c) {
  auto in = open_input(path);
  return read_euler_stream(in, c);
}

void write_euler_stream(std::ostream& out, const EulerSeries& s) {
  out << "time_s,x,y,z\n";
  for (const auto& sample : s.samples)
    out << format_g9(sample.t) << "," << format_g9(sample.angles.x_deg) << ","
        << format_g9(sample.angles.y_deg) << "," << format_g9(sample.angles.z_deg) << "\n";
}

void write_euler_stream_file(const std::string& path, const EulerSeries& s) {
  auto out = open_output(path);
  write_euler_stream(out, s);
}

// ---------------------------------------------------------------------------
// Config documents
// ---------------------------------------------------------------------------

namespace {

SkeletonTopology topology_from_json(const json& j) {
  SkeletonTopology t;
  t.name = j.value("name", "");
  for (const auto& joint : j.at("joints")) t.joints.push_back(joint.get<std::string>());
  if (j.contains("edges"))
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2)
        throw Error(Errc::invalid_config, "edges must be [parent, child] pairs");
      t.edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
  const json& a = j.at("anchors");
  t.anchors.left_shoulder = a.at("left_shoulder").get<std::string>();
  t.anchors.right_shoulder = a.at("right_shoulder").get<std::string>();
  t.anchors.left_hip = a.at("left_hip").get<std::string>();
  t.anchors.right_hip = a.at("right_hip").get<std::string>();
  return t;
}

json topology_to_json(const SkeletonTopology& t) {
  json j;
  j["name"] = t.name;
  j["joints"] = t.joints;
  json edges = json::array();
  for (const auto& [p, c] : t.edges) edges.push_back({p, c});
  j["edges"] = edges;
  j["anchors"] = {{"left_shoulder", t.anchors.left_shoulder},
                  {"right_shoulder", t.anchors.right_shoulder},
                  {"left_hip", t.anchors.left_hip},
                  {"right_hip", t.anchors.right_hip}};
  return j;
}

JointMap map_from_json(const json& j) {
  JointMap m;
  m.target_topology = j.value("target", "");
  for (const auto& rule : j.at("rules")) {
    JointMapRule r;
    r.target = rule.at("target").get<std::string>();
    const json& sources = rule.at("sources");
    if (!sources.is_object() || sources.empty())
      throw Error(Errc::invalid_config, "rule '" + r.target + "' needs a sources object");
    for (const auto& [src, w] : sources.items()) {
      if (!w.is_number())
        throw Error(Errc::invalid_config, "weight of '" + src + "' is not a number");
      r.sources.emplace_back(src, w.get<double>());
    }
    m.rules.push_back(std::move(r));
  }
  return m;
}

json map_to_json(const JointMap& m) {
  json j;
  j["target"] = m.target_topology;
  json rules = json::array();
  for (const auto& r : m.rules) {
    json sources = json::object();
    for (const auto& [src, w] : r.sources) sources[src] = w;
    rules.push_back({{"target", r.target}, {"sources", sources}});
  }
  j["rules"] = rules;
  return j;
}

std::vector<JointAngleSpec> channels_from_json(const json& j) {
  std::vector<JointAngleSpec> specs;
  std::set<std::string> names;
  for (const auto& c : j) {
    JointAngleSpec s;
    s.channel = c.at("name").get<std::string>();
    if (!names.insert(s.channel).second)
      throw Error(Errc::invalid_config, "duplicate channel '" + s.channel + "'");
    const json& prox = c.at("proximal");
    s.proximal = {prox.at("from").get<std::string>(), prox.at("to").get<std::string>()};
    if (s.proximal.from == s.proximal.to)
      throw Error(Errc::invalid_config,
                  "channel '" + s.channel + "': proximal endpoints must differ");
    if (c.contains("distal") && !c.at("distal").is_string()) {
      const json& dist = c.at("distal");
      s.distal = Segment{dist.at("from").get<std::string>(), dist.at("to").get<std::string>()};
      if (s.distal->from == s.distal->to)
        throw Error(Errc::invalid_config,
                    "channel '" + s.channel + "': distal endpoints must differ");
    } else {
      // "distal": "vertical" (or omitted) marks a vertical-reference channel
      if (c.contains("distal") && c.at("distal").get<std::string>() != "vertical")
        throw Error(Errc::invalid_config,
                    "channel '" + s.channel + "': distal must be a segment or \"vertical\"");
      s.distal.reset();
    }
    if (c.contains("vertical_axis"))
      s.vertical_axis = parse_axis(c.at("vertical_axis").get<std::string>());
    if (c.contains("neutralized_axis"))
      s.neutralized_axis = parse_axis(c.at("neutralized_axis").get<std::string>());
    if (c.contains("neutral_offset_deg"))
      s.neutral_offset_deg = c.at("neutral_offset_deg").get<double>();
    specs.push_back(std::move(s));
  }
  return specs;
}

json channels_to_json(std::span<const JointAngleSpec> specs) {
  json arr = json::array();
  for (const auto& s : specs) {
    json c;
    c["name"] = s.channel;
    c["proximal"] = {{"from", s.proximal.from}, {"to", s.proximal.to}};
    if (s.distal)
      c["distal"] = {{"from", s.distal->from}, {"to", s.distal->to}};
    else
      c["distal"] = "vertical";
    c["vertical_axis"] = std::string(axis_name(s.vertical_axis));
    c["neutralized_axis"] = std::string(axis_name(s.neutralized_axis));
    c["neutral_offset_deg"] = s.neutral_offset_deg;
    arr.push_back(std::move(c));
  }
  return arr;
}

json parse_json_document(std::istream& in) {
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(Errc::parse_error, e.what());
  }
}

}  // namespace

ConfigDocument read_document(std::istream& in) {
  const json j = parse_json_document(in);
  if (!j.is_object()) throw Error(Errc::parse_error, "document is not a JSON object");
  ConfigDocument doc;
  try {
    // sections have fixed shapes; keys of other shapes belong to other
    // schemas (the analysis config references sections by path strings)
    if (j.contains("topology") && j.at("topology").is_object())
      doc.topology = topology_from_json(j.at("topology"));
    if (j.contains("map") && j.at("map").is_object()) doc.map = map_from_json(j.at("map"));
    if (j.contains("channels") && j.at("channels").is_array())
      doc.channels = channels_from_json(j.at("channels"));
  } catch (const json::exception& e) {
    throw Error(Errc::parse_error, e.what());
  }
  return doc;
}

ConfigDocument read_document_file(const std::string& path) {
  auto in = open_input(path);
  return read_document(in);
}

SkeletonTopology load_topology(const std::string& path) {
  auto doc = read_document_file(path);
  if (!doc.topology)
    throw Error(Errc::invalid_config, "'" + path + "' has no topology section");
  validate_topology(*doc.topology);
  return std::move(*doc.topology);
}

JointMap load_joint_map(const std::string& path) {
  auto doc = read_document_file(path);
  if (!doc.map) throw Error(Errc::invalid_config, "'" + path + "' has no map section");
  validate_joint_map(*doc.map);
  return std::move(*doc.map);
}

std::vector<JointAngleSpec> load_channels(const std::string& path) {
  auto doc = read_document_file(path);
  if (!doc.channels)
    throw Error(Errc::invalid_config, "'" + path + "' has no channels section");
  return std::move(*doc.channels);
}

void write_document(std::ostream& out, const ConfigDocument& doc) {
  json j = json::object();
  if (doc.topology) j["topology"] = topology_to_json(*doc.topology);
  if (doc.map) j["map"] = map_to_json(*doc.map);
  if (doc.channels) j["channels"] = channels_to_json(*doc.channels);
  out << j.dump(2) << "\n";
}

void write_document_file(const std::string& path, const ConfigDocument& doc) {
  auto out = open_output(path);
  write_document(out, doc);
}

AnalysisConfig load_analysis_config(const std::string& path) {
  auto in = open_input(path);
  const json j = parse_json_document(in);
  AnalysisConfig cfg;
  try {
    cfg.reference_topology_path = j.at("reference_topology").get<std::string>();
    cfg.channels_path = j.at("channels").get<std::string>();
    cfg.estimated_topology_path = j.value("estimated_topology", "");
    cfg.joint_map_path = j.value("joint_map", "");
    if (j.contains("convention"))
      cfg.convention = RotationConvention::parse(j.at("convention").get<std::string>());
    if (j.contains("alignment")) {
      const auto a = j.at("alignment").get<std::string>();
      if (a == "per-frame") cfg.alignment = AlignmentGranularity::per_frame;
      else if (a == "first-frame") cfg.alignment = AlignmentGranularity::first_frame;
      else throw Error(Errc::invalid_config, "unknown alignment '" + a + "'");
    }
    if (j.contains("mode"))
      cfg.mode = parse_comparison_mode(j.at("mode").get<std::string>());
    if (j.contains("canonicalize_reference"))
      cfg.canonicalize_reference = j.at("canonicalize_reference").get<bool>();
    if (j.contains("max_gap_s")) {
      cfg.max_gap_s = j.at("max_gap_s").get<double>();
      if (!(cfg.max_gap_s > 0.0))
        throw Error(Errc::invalid_config, "max_gap_s must be positive");
    }
    if (j.contains("interpolation_target")) {
      const auto target = j.at("interpolation_target").get<std::string>();
      if (target == "reference") cfg.interpolate_reference = true;
      else if (target == "estimated") cfg.interpolate_reference = false;
      else throw Error(Errc::invalid_config, "unknown interpolation_target '" + target + "'");
    }
    if (j.contains("group_by")) {
      cfg.group_by.clear();
      for (const auto& k : j.at("group_by"))
        cfg.group_by.push_back(parse_group_key(k.get<std::string>()));
    }
  } catch (const json::exception& e) {
    throw Error(Errc::invalid_config, std::string("'") + path + "': " + e.what());
  }

  // Paths are taken relative to the config file's directory.
  const auto base = std::filesystem::path(path).parent_path();
  auto resolve = [&](std::string& p) {
    if (p.empty()) return;
    const std::filesystem::path fp(p);
    if (fp.is_relative()) p = (base / fp).string();
  };
  resolve(cfg.reference_topology_path);
  resolve(cfg.estimated_topology_path);
  resolve(cfg.joint_map_path);
  resolve(cfg.channels_path);

  // Referenced files must exist and parse (config invariant).
  cfg.reference_topology = load_topology(cfg.reference_topology_path);
  if (!cfg.estimated_topology_path.empty())
    cfg.estimated_topology = load_topology(cfg.estimated_topology_path);
  if (!cfg.joint_map_path.empty()) cfg.joint_map = load_joint_map(cfg.joint_map_path);
  cfg.channels = load_channels(cfg.channels_path);
  return cfg;
}

}  // namespace mocap::io
