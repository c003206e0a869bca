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

#include "mocap/stream_sync.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "mocap/errors.hpp"

namespace mocap {

namespace {

constexpr double kExactEps = 1e-9;

// Index of the last b-sample with timestamp <= t, or -1.
std::ptrdiff_t lower_index(const std::vector<FlexionSample>& b, double t) {
  auto it = std::upper_bound(b.begin(), b.end(), t,
                             [](double value, const FlexionSample& s) { return value < s.t; });
  return static_cast<std::ptrdiff_t>(it - b.begin()) - 1;
}

}  // namespace

PairedSeries pair_streams(const FlexionSeries& a, const FlexionSeries& b,
                          double max_gap_s, PairingMethod method) {
  if (a.samples.empty() || b.samples.empty())
    throw Error(Errc::empty_series, a.samples.empty() ? a.channel : b.channel);
  if (max_gap_s <= 0.0) throw Error(Errc::invalid_config, "max_gap must be positive");

  const double b_first = b.samples.front().t;
  const double b_last = b.samples.back().t;
  if (a.samples.back().t < b_first - max_gap_s || a.samples.front().t > b_last + max_gap_s)
    throw Error(Errc::no_overlap, "'" + a.channel + "' spans [" +
                                      std::to_string(a.samples.front().t) + ", " +
                                      std::to_string(a.samples.back().t) + "]s vs [" +
                                      std::to_string(b_first) + ", " + std::to_string(b_last) +
                                      "]s");

  PairedSeries out;
  out.channel = a.channel;
  out.method = method;
  for (const auto& sa : a.samples) {
    const std::ptrdiff_t lo = lower_index(b.samples, sa.t);
    const std::ptrdiff_t hi = lo + 1;
    const bool has_lo = lo >= 0;
    const bool has_hi = hi < static_cast<std::ptrdiff_t>(b.samples.size());

    double paired = 0.0;
    bool ok = false;
    switch (method) {
      case PairingMethod::exact: {
        if (has_lo && std::fabs(b.samples[lo].t - sa.t) <= kExactEps) {
          paired = b.samples[lo].angle_deg;
          ok = true;
        } else if (has_hi && std::fabs(b.samples[hi].t - sa.t) <= kExactEps) {
          paired = b.samples[hi].angle_deg;
          ok = true;
        }
        break;
      }
      case PairingMethod::nearest: {
        const double dl = has_lo ? sa.t - b.samples[lo].t : std::numeric_limits<double>::infinity();
        const double dh = has_hi ? b.samples[hi].t - sa.t : std::numeric_limits<double>::infinity();
        const double best = std::min(dl, dh);
        if (best <= max_gap_s) {
          paired = (dl <= dh) ? b.samples[lo].angle_deg : b.samples[hi].angle_deg;
          ok = true;
        }
        break;
      }
      case PairingMethod::linear: {
        if (has_lo && std::fabs(b.samples[lo].t - sa.t) <= kExactEps) {
          paired = b.samples[lo].angle_deg;
          ok = true;
        } else if (has_hi && std::fabs(b.samples[hi].t - sa.t) <= kExactEps) {
          paired = b.samples[hi].angle_deg;
          ok = true;
        } else if (has_lo && has_hi) {
          const auto& l = b.samples[lo];
          const auto& h = b.samples[hi];
          const double near = std::min(sa.t - l.t, h.t - sa.t);
          if (near <= max_gap_s) {
            const double w = (sa.t - l.t) / (h.t - l.t);
            paired = l.angle_deg + w * (h.angle_deg - l.angle_deg);
            ok = true;
          }
        }
        break;
      }
    }
    if (ok)
      out.samples.push_back({sa.t, sa.angle_deg, paired});
    else
      ++out.gaps;
  }
  return out;
}

std::vector<std::pair<double, double>> deviation_series(const PairedSeries& p) {
  std::vector<std::pair<double, double>> out;
  out.reserve(p.samples.size());
  for (const auto& s : p.samples) out.emplace_back(s.t, std::fabs(s.a_deg - s.b_deg));
  return out;
}

DeviationStats aggregate(std::span<const double> deviations) {
  if (deviations.empty()) throw Error(Errc::empty_input, "no deviation samples");
  std::vector<double> sorted(deviations.begin(), deviations.end());
  std::sort(sorted.begin(), sorted.end());

  DeviationStats s;
  s.samples = sorted.size();
  const std::size_t n = sorted.size();
  s.median_deg = (n % 2 == 1) ? sorted[n / 2] : (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
  double sum = 0.0;
  for (double d : deviations) sum += d;
  s.average_deg = sum / static_cast<double>(n);
  s.maximum_deg = sorted.back();
  return s;
}

GroupKey parse_group_key(std::string_view s) {
  if (s == "exercise") return GroupKey::exercise;
  if (s == "perspective" || s == "camera_perspective") return GroupKey::perspective;
  if (s == "clothing") return GroupKey::clothing;
  throw Error(Errc::invalid_config, "unknown group key '" + std::string(s) + "'");
}

std::string_view group_key_name(GroupKey k) {
  switch (k) {
    case GroupKey::exercise: return "exercise";
    case GroupKey::perspective: return "perspective";
    case GroupKey::clothing: return "clothing";
  }
  return "?";
}

ComparisonMode parse_comparison_mode(std::string_view s) {
  if (s == "self-consistency" || s == "self") return ComparisonMode::self_consistency;
  if (s == "cross-system" || s == "cross") return ComparisonMode::cross_system;
  throw Error(Errc::invalid_config, "unknown comparison mode '" + std::string(s) + "'");
}

std::string_view comparison_mode_name(ComparisonMode m) {
  return m == ComparisonMode::self_consistency ? "self-consistency" : "cross-system";
}

namespace {

std::string format_perspective(double deg) {
  // 0 and 45 are the expected values; keep short labels for those.
  double rounded = std::round(deg);
  if (std::fabs(deg - rounded) < 1e-9) return std::to_string(static_cast<long long>(rounded));
  return std::to_string(deg);
}

}  // namespace

DeviationReport group_report(std::span<const RecordingDeviations> recordings,
                             std::span<const GroupKey> group_by, ComparisonMode mode) {
  if (recordings.empty()) throw Error(Errc::empty_group, "no recordings to group");

  const bool by_exercise =
      std::find(group_by.begin(), group_by.end(), GroupKey::exercise) != group_by.end();

  struct Group {
    std::string channel;
    Exercise exercise;
    std::string label;
    std::vector<double> pooled;
    std::size_t gaps = 0;
  };
  std::map<std::pair<std::string, std::string>, Group> groups;

  for (const auto& rec : recordings) {
    std::string label = by_exercise ? rec.meta.exercise.name() : "all";
    for (const auto key : group_by) {
      switch (key) {
        case GroupKey::exercise:
          break;  // already the base label
        case GroupKey::perspective:
          label += "|perspective=" + format_perspective(rec.meta.camera_perspective_deg);
          break;
        case GroupKey::clothing:
          if (rec.meta.clothing.empty())
            throw Error(Errc::empty_group,
                        "clothing requested as a group key but recording '" +
                            rec.meta.subject + "' carries none");
          label += "|clothing=" + rec.meta.clothing;
          break;
      }
    }
    auto& g = groups[{rec.channel, label}];
    if (g.channel.empty()) {
      g.channel = rec.channel;
      g.exercise = rec.meta.exercise;
      g.label = label;
    }
    g.pooled.insert(g.pooled.end(), rec.deviations.begin(), rec.deviations.end());
    g.gaps += rec.gaps;
  }

  std::vector<Group> ordered;
  ordered.reserve(groups.size());
  for (auto& [key, g] : groups) {
    if (g.pooled.empty())
      throw Error(Errc::empty_group, "group (" + g.channel + ", " + g.label + ") has no samples");
    ordered.push_back(std::move(g));
  }
  std::sort(ordered.begin(), ordered.end(), [](const Group& a, const Group& b) {
    const int ra = channel_rank(a.channel), rb = channel_rank(b.channel);
    if (ra != rb) return ra < rb;
    if (a.channel != b.channel) return a.channel < b.channel;
    const int ea = exercise_rank(a.exercise), eb = exercise_rank(b.exercise);
    if (ea != eb) return ea < eb;
    return a.label < b.label;
  });

  DeviationReport report;
  report.mode = mode;
  report.group_keys.assign(group_by.begin(), group_by.end());
  for (const auto& g : ordered) {
    DeviationStats stats = aggregate(g.pooled);
    stats.gaps = g.gaps;
    report.rows.push_back({g.channel, g.label, stats});
  }
  return report;
}

}  // namespace mocap
