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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mocap/errors.hpp"
#include "mocap/io.hpp"

namespace mocap::io {

namespace {

constexpr double kWidth = 960, kHeight = 540;
constexpr double kLeft = 70, kRight = 180, kTop = 40, kBottom = 60;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c; break;
    }
  }
  return out;
}

std::vector<double> nice_ticks(double lo, double hi, int target) {
  std::vector<double> ticks;
  const double span = hi - lo;
  if (span <= 0) return {lo};
  double step = std::pow(10.0, std::floor(std::log10(span / target)));
  for (double mult : {1.0, 2.0, 5.0, 10.0}) {
    if (span / (step * mult) <= target) {
      step *= mult;
      break;
    }
  }
  const double first = std::ceil(lo / step) * step;
  for (double t = first; t <= hi + 1e-12 * span; t += step) ticks.push_back(t);
  return ticks;
}

}  // namespace

std::string emit_plot(std::span<const PlotSeries> series) {
  if (series.empty()) throw Error(Errc::empty_series, "nothing to plot");
  for (const auto& s : series)
    if (s.points.empty()) throw Error(Errc::empty_series, "channel '" + s.label + "' is empty");

  double t_lo = series[0].points[0].first, t_hi = t_lo;
  double v_lo = 0.0, v_hi = series[0].points[0].second;
  for (const auto& s : series)
    for (const auto& [t, v] : s.points) {
      t_lo = std::min(t_lo, t);
      t_hi = std::max(t_hi, t);
      v_lo = std::min(v_lo, v);
      v_hi = std::max(v_hi, v);
    }
  if (t_hi == t_lo) t_hi = t_lo + 1.0;
  if (v_hi == v_lo) v_hi = v_lo + 1.0;

  const double px = kWidth - kLeft - kRight;
  const double py = kHeight - kTop - kBottom;
  auto map_x = [&](double t) { return kLeft + (t - t_lo) / (t_hi - t_lo) * px; };
  auto map_y = [&](double v) { return kTop + (1.0 - (v - v_lo) / (v_hi - v_lo)) * py; };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  svg << "  <rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n";

  // axes
  svg << "  <g stroke=\"black\" stroke-width=\"1\">\n";
  svg << "    <line x1=\"" << kLeft << "\" y1=\"" << kTop + py << "\" x2=\"" << kLeft + px
      << "\" y2=\"" << kTop + py << "\"/>\n";
  svg << "    <line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
      << kTop + py << "\"/>\n";
  svg << "  </g>\n";

  svg << "  <g font-family=\"sans-serif\" font-size=\"12\" fill=\"black\">\n";
  for (double t : nice_ticks(t_lo, t_hi, 8)) {
    const double x = map_x(t);
    svg << "    <line x1=\"" << fmt(x) << "\" y1=\"" << kTop + py << "\" x2=\"" << fmt(x)
        << "\" y2=\"" << kTop + py + 5 << "\" stroke=\"black\"/>\n";
    svg << "    <text x=\"" << fmt(x) << "\" y=\"" << kTop + py + 20
        << "\" text-anchor=\"middle\">" << fmt(t) << "</text>\n";
  }
  for (double v : nice_ticks(v_lo, v_hi, 6)) {
    const double y = map_y(v);
    svg << "    <line x1=\"" << kLeft - 5 << "\" y1=\"" << fmt(y) << "\" x2=\"" << kLeft
        << "\" y2=\"" << fmt(y) << "\" stroke=\"black\"/>\n";
    svg << "    <text x=\"" << kLeft - 9 << "\" y=\"" << fmt(y + 4)
        << "\" text-anchor=\"end\">" << fmt(v) << "</text>\n";
  }
  svg << "    <text x=\"" << kLeft + px / 2 << "\" y=\"" << kHeight - 15
      << "\" text-anchor=\"middle\">time [s]</text>\n";
  svg << "    <text x=\"18\" y=\"" << kTop + py / 2
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << kTop + py / 2
      << ")\">deviation [deg]</text>\n";
  svg << "  </g>\n";

  // one polyline per channel
  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))];
    svg << "  <polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (const auto& [t, v] : series[i].points) {
      if (!first) svg << " ";
      first = false;
      svg << fmt(map_x(t)) << "," << fmt(map_y(v));
    }
    svg << "\"/>\n";
  }

  // legend
  svg << "  <g font-family=\"sans-serif\" font-size=\"12\">\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))];
    const double y = kTop + 10 + 18.0 * static_cast<double>(i);
    svg << "    <rect x=\"" << kLeft + px + 14 << "\" y=\"" << fmt(y - 9)
        << "\" width=\"12\" height=\"12\" fill=\"" << color << "\"/>\n";
    svg << "    <text x=\"" << kLeft + px + 32 << "\" y=\"" << fmt(y + 2) << "\">"
        << xml_escape(series[i].label) << "</text>\n";
  }
  svg << "  </g>\n";
  svg << "</svg>\n";
  return svg.str();
}

void write_plot_file(const std::string& path, std::span<const PlotSeries> series) {
  const std::string svg = emit_plot(series);
  std::ofstream out(path);
  if (!out) throw Error(Errc::parse_error, "cannot write '" + path + "'");
  out << svg;
}

}  // namespace mocap::io
