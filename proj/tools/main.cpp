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

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mocap/errors.hpp"
#include "mocap/io.hpp"
#include "mocap/pipeline.hpp"
#include "mocap/synth.hpp"

namespace {

using namespace mocap;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitEmptyResult = 2;

// --------------------------------------------------------------------------
// validate: parse every given file, report OK or the located error
// --------------------------------------------------------------------------

int run_validate(const std::vector<std::string>& paths) {
  bool all_ok = true;
  for (const auto& path : paths) {
    try {
      const auto ext = std::filesystem::path(path).extension().string();
      if (ext == ".jsonl") {
        const auto contents = io::read_skeleton_frames_file(path);
        std::cout << "OK " << path << " (" << contents.frames.size() << " frames)\n";
      } else if (ext == ".csv") {
        const auto series = io::read_angle_stream_file(path);
        std::cout << "OK " << path << " (" << series.size() << " channels, "
                  << (series.empty() ? 0 : series[0].samples.size()) << " rows)\n";
      } else if (ext == ".json") {
        const auto doc = io::read_document_file(path);
        std::string sections;
        if (doc.topology) {
          validate_topology(*doc.topology);
          sections += " topology";
        }
        if (doc.map) {
          validate_joint_map(*doc.map);
          sections += " map";
        }
        if (doc.channels) sections += " channels";
        if (sections.empty()) {
          // fall back to analysis-config schema
          io::load_analysis_config(path);
          sections = " analysis-config";
        }
        std::cout << "OK " << path << " (sections:" << sections << ")\n";
      } else {
        std::cerr << "error: " << path << ": unknown extension '" << ext
                  << "' (expected .jsonl, .csv, or .json)\n";
        all_ok = false;
      }
    } catch (const Error& e) {
      std::cerr << "error: " << path << ": " << e.what() << "\n";
      all_ok = false;
    }
  }
  return all_ok ? kExitOk : kExitFailure;
}

// --------------------------------------------------------------------------
// synth: scripted exercise -> skeleton stream + ground-truth angles
// --------------------------------------------------------------------------

struct SynthArgs {
  std::string shape = "sinusoidal";
  double amplitude = 90.0;
  double period = 2.0;
  int repetitions = 10;
  double rate = 30.0;
  std::vector<std::string> channels = {"knee_right", "knee_left"};
  std::string out_skeleton;
  std::string out_angles;
  std::string out_perturbed;
  double rot_x = 0.0, rot_y = 0.0, rot_z = 0.0;
  std::vector<double> translate;
  double scale = 1.0;
  double sigma_mm = 0.0;
  double dropout = 0.0;
  std::uint64_t seed = 1;
  std::string subject = "synthetic";
  std::string exercise = "squat";
  double perspective = 0.0;
  std::string clothing;
};

int run_synth(const SynthArgs& args, const RotationConvention& convention) {
  synth::MotionProfile profile;
  if (args.shape == "sinusoidal") profile.shape = synth::ProfileShape::sinusoidal;
  else if (args.shape == "trapezoid") profile.shape = synth::ProfileShape::trapezoid;
  else throw Error(Errc::invalid_profile, "unknown shape '" + args.shape + "'");
  profile.amplitude_deg = args.amplitude;
  profile.period_s = args.period;
  profile.repetitions = args.repetitions;
  profile.sample_rate_hz = args.rate;
  profile.channels = args.channels;

  const auto truth = synth::generate_trajectory(profile);
  auto seq = synth::forward_skeleton(truth, synth::LimbLengths::defaults(),
                                     synth::reference_topology());
  seq.meta.subject = args.subject;
  seq.meta.exercise = Exercise::parse(args.exercise);
  seq.meta.camera_perspective_deg = args.perspective;
  seq.meta.clothing = args.clothing;
  seq.meta.repetitions = args.repetitions;

  if (!args.out_skeleton.empty()) {
    io::write_skeleton_stream_file(args.out_skeleton, seq);
    std::cout << "wrote " << args.out_skeleton << " (" << seq.frames.size() << " frames)\n";
  }
  if (!args.out_angles.empty()) {
    io::write_angle_stream_file(args.out_angles, truth);
    std::cout << "wrote " << args.out_angles << " (" << truth.size() << " channels)\n";
  }
  if (!args.out_perturbed.empty()) {
    synth::Perturbation pert;
    pert.transform.rotation = euler_to_rotation({args.rot_x, args.rot_y, args.rot_z}, convention);
    if (!args.translate.empty()) {
      if (args.translate.size() != 3)
        throw Error(Errc::invalid_config, "--translate needs x,y,z");
      pert.transform.translation = Vec3(args.translate[0], args.translate[1], args.translate[2]);
    }
    pert.transform.scale = args.scale;
    pert.noise_sigma_m = args.sigma_mm / 1000.0;
    pert.dropout_prob = args.dropout;
    const auto moved = synth::perturb(seq, pert, args.seed);
    io::write_skeleton_stream_file(args.out_perturbed, moved);
    std::cout << "wrote " << args.out_perturbed << " (seed " << args.seed << ", sigma "
              << args.sigma_mm << " mm)\n";
  }
  return kExitOk;
}

// --------------------------------------------------------------------------
// angles: skeleton stream -> flexion series CSV
// --------------------------------------------------------------------------

int run_angles(const std::string& config_path, const std::string& in_path,
               const std::string& out_path, bool apply_map) {
  const auto cfg = io::load_analysis_config(config_path);
  MotionSequence seq;
  if (apply_map && cfg.estimated_topology && cfg.joint_map) {
    seq = io::read_skeleton_stream_file(in_path, *cfg.estimated_topology);
    seq = pipeline::map_sequence(seq, *cfg.joint_map, cfg.reference_topology);
  } else {
    seq = io::read_skeleton_stream_file(in_path, cfg.reference_topology);
  }
  seq = pipeline::normalize_sequence(seq);
  auto series = flexion_series(seq, cfg.channels);

  // channels that were degenerate on every frame have no samples; drop them
  std::vector<FlexionSeries> writable;
  std::size_t gaps = 0;
  for (auto& s : series) {
    gaps += s.gaps;
    if (!s.samples.empty()) writable.push_back(std::move(s));
  }
  if (writable.empty()) throw Error(Errc::empty_series, "no channel produced samples");
  io::write_angle_stream_file(out_path, writable);
  std::cout << "wrote " << out_path << " (" << writable.size() << " channels";
  if (gaps > 0) std::cout << ", " << gaps << " gaps";
  std::cout << ")\n";
  return kExitOk;
}

// --------------------------------------------------------------------------
// compare: recordings -> deviation report (+ plots)
// --------------------------------------------------------------------------

std::map<std::string, std::string> parse_pair_spec(const std::string& spec) {
  std::map<std::string, std::string> kv;
  std::string token;
  std::istringstream in(spec);
  while (std::getline(in, token, ',')) {
    const auto eq = token.find('=');
    if (eq == std::string::npos)
      throw Error(Errc::invalid_config, "--pair expects key=value, got '" + token + "'");
    kv[token.substr(0, eq)] = token.substr(eq + 1);
  }
  return kv;
}

int run_compare(const std::string& config_path, const std::vector<std::string>& pair_specs,
                const std::string& out_path, const std::string& format_name,
                const std::string& plot_path, const std::optional<std::string>& mode_override,
                const std::optional<bool>& canonicalize_override,
                const std::vector<std::string>& group_by_override,
                const std::optional<std::string>& convention_override) {
  auto cfg = io::load_analysis_config(config_path);
  if (mode_override) cfg.mode = parse_comparison_mode(*mode_override);
  if (canonicalize_override) cfg.canonicalize_reference = *canonicalize_override;
  if (convention_override)
    cfg.convention = RotationConvention::parse(*convention_override);
  if (!group_by_override.empty()) {
    cfg.group_by.clear();
    for (const auto& k : group_by_override) cfg.group_by.push_back(parse_group_key(k));
  }

  if (pair_specs.empty())
    throw Error(Errc::invalid_config, "need at least one --pair recording");

  std::vector<pipeline::RecordingData> recordings;
  for (const auto& spec : pair_specs) {
    const auto kv = parse_pair_spec(spec);
    pipeline::RecordingData rec;
    const SkeletonTopology& subject_topology =
        (cfg.mode == ComparisonMode::cross_system && cfg.estimated_topology)
            ? *cfg.estimated_topology
            : cfg.reference_topology;
    if (cfg.mode == ComparisonMode::cross_system) {
      if (!kv.count("est") || !kv.count("ref") || !kv.count("angles"))
        throw Error(Errc::invalid_config,
                    "cross-system --pair needs est=...,ref=...,angles=...");
      rec.skeleton = io::read_skeleton_stream_file(kv.at("est"), subject_topology);
      rec.reference_skeleton =
          io::read_skeleton_stream_file(kv.at("ref"), cfg.reference_topology);
      rec.has_reference_skeleton = true;
      rec.reference_angles = io::read_angle_stream_file(kv.at("angles"));
    } else {
      if (!kv.count("skel") || !kv.count("angles"))
        throw Error(Errc::invalid_config,
                    "self-consistency --pair needs skel=...,angles=...");
      rec.skeleton = io::read_skeleton_stream_file(kv.at("skel"), cfg.reference_topology);
      rec.reference_angles = io::read_angle_stream_file(kv.at("angles"));
    }
    recordings.push_back(std::move(rec));
  }

  pipeline::PipelineOptions options;
  options.alignment = cfg.alignment;
  options.max_gap_s = cfg.max_gap_s;
  options.interpolate_reference = cfg.interpolate_reference;
  options.canonicalize_reference = cfg.canonicalize_reference;
  options.convention = cfg.convention;

  const JointMap* map = nullptr;
  if (cfg.mode == ComparisonMode::cross_system && cfg.joint_map) map = &*cfg.joint_map;

  const auto outcome = pipeline::run_compare(recordings, cfg.channels, map,
                                             cfg.reference_topology, cfg.mode, cfg.group_by,
                                             options);

  const auto format =
      format_name == "table" ? io::ReportFormat::text_table : io::ReportFormat::csv;
  const std::string rendered = io::emit_report(outcome.report, format);
  if (out_path.empty() || out_path == "-") {
    std::cout << rendered;
  } else {
    std::ofstream out(out_path);
    if (!out) throw Error(Errc::parse_error, "cannot write '" + out_path + "'");
    out << rendered;
    std::cout << "wrote " << out_path << " (" << outcome.report.rows.size() << " rows)\n";
  }
  std::cout << "# mode: " << comparison_mode_name(cfg.mode)
            << ", canonicalize-reference: " << (cfg.canonicalize_reference ? "on" : "off")
            << ", convention: " << cfg.convention.str() << "\n";

  if (!plot_path.empty()) {
    for (std::size_t r = 0; r < outcome.per_recording.size(); ++r) {
      std::vector<io::PlotSeries> plot;
      for (const auto& cd : outcome.per_recording[r]) {
        if (cd.deviations.empty()) continue;
        io::PlotSeries s;
        s.label = cd.channel;
        s.points = cd.deviations;
        plot.push_back(std::move(s));
      }
      if (plot.empty()) continue;
      std::string path = plot_path;
      if (outcome.per_recording.size() > 1) {
        const auto dot = path.rfind('.');
        const std::string suffix = "_r" + std::to_string(r);
        path = dot == std::string::npos ? path + suffix
                                        : path.substr(0, dot) + suffix + path.substr(dot);
      }
      io::write_plot_file(path, plot);
      std::cout << "wrote " << path << "\n";
    }
  }
  return kExitOk;
}

// --------------------------------------------------------------------------
// anomalies: euler stream -> events + repaired stream
// --------------------------------------------------------------------------

int run_anomalies(const std::string& in_path, const RotationConvention& convention,
                  double jump_threshold, double flip_tolerance, const std::string& out_path,
                  const std::string& events_path) {
  const auto series = io::read_euler_stream_file(in_path, convention);
  const auto events = detect_flips(series, jump_threshold, flip_tolerance);
  const auto repaired = canonicalize(series);

  std::ostringstream table;
  table << "index,t_s,kind,jump_x_deg,jump_y_deg,jump_z_deg,geodesic_deg,x_before_deg\n";
  for (const auto& e : events) {
    char line[256];
    std::snprintf(line, sizeof(line), "%zu,%.9g,%s,%.2f,%.2f,%.2f,%.2f,%.2f\n", e.index,
                  series.samples[e.index].t,
                  e.kind == AnomalyKind::representation_flip ? "representation-flip"
                                                             : "genuine-discontinuity",
                  e.axis_jump_deg[0], e.axis_jump_deg[1], e.axis_jump_deg[2], e.geodesic_deg,
                  e.x_before_deg);
    table << line;
  }
  if (events_path.empty()) {
    std::cout << table.str();
  } else {
    std::ofstream out(events_path);
    if (!out) throw Error(Errc::parse_error, "cannot write '" + events_path + "'");
    out << table.str();
    std::cout << "wrote " << events_path << "\n";
  }
  std::cout << "# " << events.size() << " event(s), " << repaired.repairs
            << " sample(s) repaired, convention " << convention.str() << "\n";

  if (!out_path.empty()) {
    io::write_euler_stream_file(out_path, repaired.series);
    std::cout << "wrote " << out_path << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mocapcheck: cross-validates motion-capture angle streams"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::string convention_name = "intrinsic-zxy";
  app.add_option("--convention", convention_name,
                 "Euler convention, e.g. intrinsic-zxy or extrinsic-xyz")
      ->capture_default_str();

  // validate
  auto* validate_cmd = app.add_subcommand("validate", "Parse and validate data files");
  std::vector<std::string> validate_paths;
  validate_cmd->add_option("files", validate_paths, "Files to validate (.jsonl/.csv/.json)")
      ->required();

  // synth
  auto* synth_cmd = app.add_subcommand("synth", "Generate synthetic exercise recordings");
  SynthArgs synth_args;
  synth_cmd->add_option("--shape", synth_args.shape, "sinusoidal|trapezoid")
      ->capture_default_str();
  synth_cmd->add_option("--amplitude", synth_args.amplitude, "Peak flexion in degrees")
      ->capture_default_str();
  synth_cmd->add_option("--period", synth_args.period, "Cycle period in seconds")
      ->capture_default_str();
  synth_cmd->add_option("--reps", synth_args.repetitions, "Repetitions")->capture_default_str();
  synth_cmd->add_option("--rate", synth_args.rate, "Sample rate in Hz")->capture_default_str();
  synth_cmd->add_option("--channels", synth_args.channels, "Driven channels")
      ->delimiter(',')
      ->capture_default_str();
  synth_cmd->add_option("--out-skeleton", synth_args.out_skeleton, "Skeleton stream (.jsonl)");
  synth_cmd->add_option("--out-angles", synth_args.out_angles, "Ground-truth angles (.csv)");
  synth_cmd->add_option("--out-perturbed", synth_args.out_perturbed,
                        "Perturbed skeleton stream (.jsonl)");
  synth_cmd->add_option("--rot-x", synth_args.rot_x, "Perturbation rotation x (deg)");
  synth_cmd->add_option("--rot-y", synth_args.rot_y, "Perturbation rotation y (deg)");
  synth_cmd->add_option("--rot-z", synth_args.rot_z, "Perturbation rotation z (deg)");
  synth_cmd->add_option("--translate", synth_args.translate, "Perturbation translation x,y,z")
      ->delimiter(',');
  synth_cmd->add_option("--scale", synth_args.scale, "Perturbation uniform scale")
      ->capture_default_str();
  synth_cmd->add_option("--sigma-mm", synth_args.sigma_mm, "Position noise std-dev (mm)")
      ->capture_default_str();
  synth_cmd->add_option("--dropout", synth_args.dropout, "Joint dropout probability")
      ->capture_default_str();
  synth_cmd->add_option("--seed", synth_args.seed, "Noise seed")->capture_default_str();
  synth_cmd->add_option("--subject", synth_args.subject, "Recording meta: subject");
  synth_cmd->add_option("--exercise", synth_args.exercise, "Recording meta: exercise");
  synth_cmd->add_option("--perspective", synth_args.perspective,
                        "Recording meta: camera perspective (deg)");
  synth_cmd->add_option("--clothing", synth_args.clothing, "Recording meta: clothing");

  // angles
  auto* angles_cmd = app.add_subcommand("angles", "Compute flexion angles from a skeleton stream");
  std::string angles_config, angles_in, angles_out;
  bool angles_map = false;
  angles_cmd->add_option("--config", angles_config, "Analysis config (.json)")->required();
  angles_cmd->add_option("--in", angles_in, "Skeleton stream (.jsonl)")->required();
  angles_cmd->add_option("--out", angles_out, "Output angles (.csv)")->required();
  angles_cmd->add_flag("--map", angles_map,
                       "Treat input as the estimated topology and map it first");

  // compare
  auto* compare_cmd =
      app.add_subcommand("compare", "Compare two streams and report deviations");
  std::string compare_config, compare_out, compare_format = "csv", compare_plot;
  std::vector<std::string> compare_pairs, compare_group_by;
  std::optional<std::string> compare_mode;
  bool compare_canonicalize = false;
  compare_cmd->add_option("--config", compare_config, "Analysis config (.json)")->required();
  compare_cmd->add_option("--pair", compare_pairs,
                          "Recording: est=E.jsonl,ref=R.jsonl,angles=A.csv "
                          "(cross) or skel=S.jsonl,angles=A.csv (self); repeatable")
      ->required();
  compare_cmd->add_option("--out", compare_out, "Report path ('-' for stdout)");
  compare_cmd->add_option("--format", compare_format, "csv|table")->capture_default_str();
  compare_cmd->add_option("--plot", compare_plot, "Deviation plot (.svg)");
  compare_cmd->add_option("--mode", compare_mode, "self-consistency|cross-system (overrides config)");
  compare_cmd->add_flag("--canonicalize", compare_canonicalize,
                        "Canonicalize euler-triple reference channels before pairing");
  compare_cmd->add_option("--group-by", compare_group_by, "Grouping keys (overrides config)")
      ->delimiter(',');

  // anomalies
  auto* anomalies_cmd =
      app.add_subcommand("anomalies", "Detect and repair Euler-branch flips in an angle stream");
  std::string anomalies_in, anomalies_out, anomalies_events;
  double jump_threshold = kDefaultJumpThresholdDeg;
  double flip_tolerance = kDefaultFlipToleranceDeg;
  anomalies_cmd->add_option("--in", anomalies_in, "Euler stream (.csv with x,y,z)")->required();
  anomalies_cmd->add_option("--out", anomalies_out, "Repaired stream (.csv)");
  anomalies_cmd->add_option("--events", anomalies_events, "Events table (.csv)");
  anomalies_cmd->add_option("--jump-threshold", jump_threshold, "Axis jump threshold (deg)")
      ->capture_default_str();
  anomalies_cmd->add_option("--flip-tolerance", flip_tolerance,
                            "Max genuine motion for a flip classification (deg)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitFailure;
  }

  try {
    const auto convention = RotationConvention::parse(convention_name);
    if (validate_cmd->parsed()) return run_validate(validate_paths);
    if (synth_cmd->parsed()) return run_synth(synth_args, convention);
    if (angles_cmd->parsed()) return run_angles(angles_config, angles_in, angles_out, angles_map);
    if (compare_cmd->parsed()) {
      std::optional<bool> canonicalize_override;
      if (compare_canonicalize) canonicalize_override = true;
      std::optional<std::string> convention_override;
      if (app.count("--convention") > 0) convention_override = convention_name;
      return run_compare(compare_config, compare_pairs, compare_out, compare_format,
                         compare_plot, compare_mode, canonicalize_override, compare_group_by,
                         convention_override);
    }
    if (anomalies_cmd->parsed())
      return run_anomalies(anomalies_in, convention, jump_threshold, flip_tolerance,
                           anomalies_out, anomalies_events);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_empty_result(e.code()) ? kExitEmptyResult : kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}
