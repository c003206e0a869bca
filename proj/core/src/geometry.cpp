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

#include "mocap/geometry.hpp"

#include "mocap/errors.hpp"

namespace mocap {

Vec3 axis_unit(Axis a) {
  Vec3 u = Vec3::Zero();
  u[static_cast<int>(a)] = 1.0;
  return u;
}

std::string_view axis_name(Axis a) {
  switch (a) {
    case Axis::X: return "X";
    case Axis::Y: return "Y";
    case Axis::Z: return "Z";
  }
  return "?";
}

Axis parse_axis(std::string_view s) {
  if (s.size() == 1) {
    switch (s[0]) {
      case 'x': case 'X': return Axis::X;
      case 'y': case 'Y': return Axis::Y;
      case 'z': case 'Z': return Axis::Z;
    }
  }
  throw Error(Errc::invalid_config, "not an axis name: '" + std::string(s) + "'");
}

std::pair<int, int> retained_axes(Axis dropped) {
  const int d = static_cast<int>(dropped);
  return {(d + 1) % 3, (d + 2) % 3};
}

double wrap_degrees(double deg) {
  double w = std::fmod(deg, 360.0);
  if (w <= -180.0) w += 360.0;
  if (w > 180.0) w -= 360.0;
  return w;
}

double fold_half_turn(double deg) {
  double w = std::fmod(std::fabs(deg), 360.0);
  return w > 180.0 ? 360.0 - w : w;
}

}  // namespace mocap
