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

#ifndef MOCAP_ERRORS_HPP
#define MOCAP_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace mocap {

enum class Errc {
  // skeleton
  duplicate_joint,
  dangling_edge,
  missing_anchor,
  cyclic_edges,
  missing_source_joint,
  // registration
  degenerate_frame,
  collinear_anchors,
  not_a_rotation,
  // kinematics
  degenerate_projection,
  unknown_joint,
  // stream sync
  empty_series,
  no_overlap,
  empty_input,
  empty_group,
  // euler anomaly
  too_short,
  // synth
  invalid_profile,
  unknown_channel,
  invalid_length,
  // io
  parse_error,
  timestamp_order,
  missing_joint,
  empty_file,
  empty_report,
  invalid_config,
};

std::string_view errc_name(Errc code);

/// Empty-result conditions map to CLI exit code 2; everything else to 1.
bool is_empty_result(Errc code);

class Error : public std::runtime_error {
public:
  Error(Errc code, std::string detail);

  Errc code() const { return code_; }
  const std::string& detail() const { return detail_; }

private:
  Errc code_;
  std::string detail_;
};

/// ParseError variant carrying the 1-based line (or row) that failed.
class ParseError : public Error {
public:
  ParseError(std::size_t line, std::string reason);

  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

}  // namespace mocap

#endif  // MOCAP_ERRORS_HPP
