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

#include "mocap/errors.hpp"

namespace mocap {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::duplicate_joint: return "DuplicateJoint";
    case Errc::dangling_edge: return "DanglingEdge";
    case Errc::missing_anchor: return "MissingAnchor";
    case Errc::cyclic_edges: return "CyclicEdges";
    case Errc::missing_source_joint: return "MissingSourceJoint";
    case Errc::degenerate_frame: return "DegenerateFrame";
    case Errc::collinear_anchors: return "CollinearAnchors";
    case Errc::not_a_rotation: return "NotARotation";
    case Errc::degenerate_projection: return "DegenerateProjection";
    case Errc::unknown_joint: return "UnknownJoint";
    case Errc::empty_series: return "EmptySeries";
    case Errc::no_overlap: return "NoOverlap";
    case Errc::empty_input: return "EmptyInput";
    case Errc::empty_group: return "EmptyGroup";
    case Errc::too_short: return "TooShort";
    case Errc::invalid_profile: return "InvalidProfile";
    case Errc::unknown_channel: return "UnknownChannel";
    case Errc::invalid_length: return "InvalidLength";
    case Errc::parse_error: return "ParseError";
    case Errc::timestamp_order: return "TimestampOrder";
    case Errc::missing_joint: return "MissingJoint";
    case Errc::empty_file: return "EmptyFile";
    case Errc::empty_report: return "EmptyReport";
    case Errc::invalid_config: return "InvalidConfig";
  }
  return "UnknownError";
}

bool is_empty_result(Errc code) {
  switch (code) {
    case Errc::empty_series:
    case Errc::no_overlap:
    case Errc::empty_input:
    case Errc::empty_group:
    case Errc::empty_file:
    case Errc::empty_report:
      return true;
    default:
      return false;
  }
}

Error::Error(Errc code, std::string detail)
    : std::runtime_error(std::string(errc_name(code)) + ": " + detail),
      code_(code),
      detail_(std::move(detail)) {}

ParseError::ParseError(std::size_t line, std::string reason)
    : Error(Errc::parse_error, "line " + std::to_string(line) + ": " + reason),
      line_(line) {}

}  // namespace mocap
