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
#include <cstdio>
#include <sstream>
#include <vector>

#include "mocap/errors.hpp"
#include "mocap/io.hpp"

namespace mocap::io {

namespace {

std::string fixed2(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string csv_escape(const std::string& s) {
  bool needs_quotes = false;
  for (char c : s)
    if (c == ',' || c == '"' || c == '\n') {
      needs_quotes = true;
      break;
    }
  if (!needs_quotes) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string emit_report(const DeviationReport& report, ReportFormat format) {
  if (report.rows.empty()) throw Error(Errc::empty_report, "report has no rows");

  std::ostringstream out;
  if (format == ReportFormat::csv) {
    out << "joint,exercise,median_deg,average_deg,maximum_deg,samples,gaps\n";
    for (const auto& row : report.rows) {
      out << csv_escape(row.channel) << "," << csv_escape(row.exercise) << ","
          << fixed2(row.stats.median_deg) << "," << fixed2(row.stats.average_deg) << ","
          << fixed2(row.stats.maximum_deg) << "," << row.stats.samples << ","
          << row.stats.gaps << "\n";
    }
    return out.str();
  }

  // text table with a header block naming the comparison setup
  out << "# mode: " << comparison_mode_name(report.mode) << "\n";
  out << "# canonicalize-reference: " << (report.canonicalized_reference ? "on" : "off") << "\n";
  out << "# grouped by: channel";
  for (const auto k : report.group_keys) out << ", " << group_key_name(k);
  out << "\n";

  std::size_t wj = std::string("joint").size(), we = std::string("exercise").size();
  for (const auto& row : report.rows) {
    wj = std::max(wj, row.channel.size());
    we = std::max(we, row.exercise.size());
  }
  auto pad = [](const std::string& s, std::size_t w) {
    return s + std::string(w - s.size(), ' ');
  };
  out << pad("joint", wj) << "  " << pad("exercise", we)
      << "  median [deg]  average [deg]  maximum [deg]  samples  gaps\n";
  for (const auto& row : report.rows) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%12s  %13s  %13s  %7zu  %4zu",
                  fixed2(row.stats.median_deg).c_str(), fixed2(row.stats.average_deg).c_str(),
                  fixed2(row.stats.maximum_deg).c_str(), row.stats.samples, row.stats.gaps);
    out << pad(row.channel, wj) << "  " << pad(row.exercise, we) << "  " << buf << "\n";
  }
  return out.str();
}

namespace {

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        current += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        current += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(current);
      current.clear();
    } else if (c != '\r') {
      current += c;
    }
  }
  fields.push_back(current);
  return fields;
}

}  // namespace

DeviationReport parse_report_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::size_t row_no = 0;
  bool header_seen = false;
  DeviationReport report;
  while (std::getline(in, line)) {
    ++row_no;
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != "joint,exercise,median_deg,average_deg,maximum_deg,samples,gaps")
        throw ParseError(row_no, "unexpected report header '" + line + "'");
      header_seen = true;
      continue;
    }
    const auto fields = split_row(line);
    if (fields.size() != 7) throw ParseError(row_no, "expected 7 report columns");
    ReportRow row;
    row.channel = fields[0];
    row.exercise = fields[1];
    try {
      row.stats.median_deg = std::stod(fields[2]);
      row.stats.average_deg = std::stod(fields[3]);
      row.stats.maximum_deg = std::stod(fields[4]);
      row.stats.samples = static_cast<std::size_t>(std::stoull(fields[5]));
      row.stats.gaps = static_cast<std::size_t>(std::stoull(fields[6]));
    } catch (const std::exception&) {
      throw ParseError(row_no, "bad numeric field in report row");
    }
    report.rows.push_back(std::move(row));
  }
  if (!header_seen || report.rows.empty())
    throw Error(Errc::empty_report, "no report rows parsed");
  return report;
}

}  // namespace mocap::io
