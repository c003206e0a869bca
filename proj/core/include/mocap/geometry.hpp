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

#ifndef MOCAP_GEOMETRY_HPP
#define MOCAP_GEOMETRY_HPP

#include <Eigen/Core>

#include <cmath>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>

namespace mocap {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

enum class Axis : int { X = 0, Y = 1, Z = 2 };

Vec3 axis_unit(Axis a);
std::string_view axis_name(Axis a);
Axis parse_axis(std::string_view s);  // accepts "x"/"X" etc.

/// Indices of the two axes retained when `dropped` is neutralized,
/// in cyclic order after the dropped one.
std::pair<int, int> retained_axes(Axis dropped);

inline constexpr double deg2rad(double d) { return d * std::numbers::pi / 180.0; }
inline constexpr double rad2deg(double r) { return r * 180.0 / std::numbers::pi; }

/// Wrap an angle into (-180, 180].
double wrap_degrees(double deg);

/// Fold an angle into [0, 180] (distance on the circle of half-turns).
double fold_half_turn(double deg);

}  // namespace mocap

#endif  // MOCAP_GEOMETRY_HPP
