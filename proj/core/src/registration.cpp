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

#include "mocap/registration.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cctype>
#include <cmath>

#include "mocap/errors.hpp"

namespace mocap {

RigidTransform compose(const RigidTransform& outer, const RigidTransform& inner) {
  RigidTransform r;
  r.scale = outer.scale * inner.scale;
  r.rotation = outer.rotation * inner.rotation;
  r.translation = outer.scale * (outer.rotation * inner.translation) + outer.translation;
  return r;
}

EulerAngles EulerAngles::normalized() const {
  return {wrap_degrees(x_deg), wrap_degrees(y_deg), wrap_degrees(z_deg)};
}

double EulerAngles::component(Axis a) const {
  switch (a) {
    case Axis::X: return x_deg;
    case Axis::Y: return y_deg;
    case Axis::Z: return z_deg;
  }
  return x_deg;
}

double& EulerAngles::component(Axis a) {
  switch (a) {
    case Axis::X: return x_deg;
    case Axis::Y: return y_deg;
    case Axis::Z: return z_deg;
  }
  return x_deg;
}

RotationConvention RotationConvention::parse(std::string_view s) {
  std::string lower(s);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  RotationConvention c;
  std::string order = lower;
  if (auto dash = lower.find('-'); dash != std::string::npos) {
    const std::string mode = lower.substr(0, dash);
    order = lower.substr(dash + 1);
    if (mode == "intrinsic")
      c.mode = EulerMode::intrinsic;
    else if (mode == "extrinsic")
      c.mode = EulerMode::extrinsic;
    else
      throw Error(Errc::invalid_config, "unknown euler mode '" + mode + "'");
  }
  if (order.size() != 3)
    throw Error(Errc::invalid_config, "euler order must name three axes: '" + std::string(s) + "'");
  bool used[3] = {false, false, false};
  for (int i = 0; i < 3; ++i) {
    c.order[i] = parse_axis(std::string_view(&order[i], 1));
    if (used[static_cast<int>(c.order[i])])
      throw Error(Errc::invalid_config, "euler order repeats an axis: '" + std::string(s) + "'");
    used[static_cast<int>(c.order[i])] = true;
  }
  return c;
}

std::string RotationConvention::str() const {
  std::string s = mode == EulerMode::intrinsic ? "intrinsic-" : "extrinsic-";
  for (auto a : order) {
    auto n = axis_name(a);
    s += static_cast<char>(std::tolower(static_cast<unsigned char>(n[0])));
  }
  return s;
}

NormalizeResult normalize(const SkeletonFrame& frame) {
  const std::size_t n = frame.positions.size();
  if (n < 2) throw Error(Errc::degenerate_frame, "fewer than 2 joints");
  Vec3 centroid = Vec3::Zero();
  for (const auto& [name, p] : frame.positions) centroid += p;
  centroid /= static_cast<double>(n);
  double sq = 0.0;
  for (const auto& [name, p] : frame.positions) sq += (p - centroid).squaredNorm();
  const double rms = std::sqrt(sq / static_cast<double>(n));
  if (rms < 1e-12) throw Error(Errc::degenerate_frame, "all joints coincident");

  RigidTransform t;
  t.scale = 1.0 / rms;
  t.translation = -centroid / rms;
  NormalizeResult r;
  r.transform = t;
  r.frame.t = frame.t;
  for (const auto& [name, p] : frame.positions) r.frame.positions.emplace(name, t.apply(p));
  return r;
}

AlignResult rigid_align(const std::vector<LabeledPoint>& source,
                        const std::vector<LabeledPoint>& target, bool with_scale) {
  if (source.size() != target.size() || source.size() < 3)
    throw Error(Errc::invalid_config, "anchor sets must match and hold at least 3 points");
  for (std::size_t i = 0; i < source.size(); ++i)
    if (source[i].label != target[i].label)
      throw Error(Errc::invalid_config,
                  "anchor label mismatch: '" + source[i].label + "' vs '" + target[i].label + "'");

  const auto n = static_cast<double>(source.size());
  Vec3 src_mean = Vec3::Zero(), tgt_mean = Vec3::Zero();
  for (const auto& p : source) src_mean += p.p;
  for (const auto& p : target) tgt_mean += p.p;
  src_mean /= n;
  tgt_mean /= n;

  Mat3 cov = Mat3::Zero();
  double src_var = 0.0;
  for (std::size_t i = 0; i < source.size(); ++i) {
    const Vec3 s = source[i].p - src_mean;
    const Vec3 t = target[i].p - tgt_mean;
    cov += t * s.transpose();
    src_var += s.squaredNorm();
  }

  Eigen::JacobiSVD<Mat3> svd(cov, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vec3 sigma = svd.singularValues();
  // Collinear anchors leave the rotation about the line undetermined.
  if (sigma(1) <= 1e-9 * std::max(sigma(0), 1e-300))
    throw Error(Errc::collinear_anchors, "source anchors span less than a plane");

  Vec3 d = Vec3::Ones();
  if ((svd.matrixU() * svd.matrixV().transpose()).determinant() < 0.0) d(2) = -1.0;
  const Mat3 rotation = svd.matrixU() * d.asDiagonal() * svd.matrixV().transpose();

  double scale = 1.0;
  if (with_scale) {
    if (src_var <= 0.0) throw Error(Errc::collinear_anchors, "source anchors coincide");
    scale = (sigma.dot(d)) / src_var;
    if (scale <= 0.0) throw Error(Errc::collinear_anchors, "degenerate scale estimate");
  }

  AlignResult out;
  out.transform.rotation = rotation;
  out.transform.scale = scale;
  out.transform.translation = tgt_mean - scale * (rotation * src_mean);
  for (std::size_t i = 0; i < source.size(); ++i)
    out.residual += (out.transform.apply(source[i].p) - target[i].p).squaredNorm();
  return out;
}

SkeletonFrame apply_transform(const SkeletonFrame& frame, const RigidTransform& t) {
  SkeletonFrame out;
  out.t = frame.t;
  for (const auto& [name, p] : frame.positions) out.positions.emplace(name, t.apply(p));
  return out;
}

namespace {

Mat3 axis_rotation(Axis axis, double deg) {
  const double r = deg2rad(deg);
  const double c = std::cos(r), s = std::sin(r);
  Mat3 m = Mat3::Identity();
  const auto [u, v] = retained_axes(axis);
  m(u, u) = c;
  m(u, v) = -s;
  m(v, u) = s;
  m(v, v) = c;
  return m;
}

// +1 when (i,j,k) is a cyclic permutation of (X,Y,Z).
int permutation_sign(const std::array<Axis, 3>& order) {
  const int i = static_cast<int>(order[0]);
  const int j = static_cast<int>(order[1]);
  return (j == (i + 1) % 3) ? 1 : -1;
}

// Intrinsic decomposition R = R_i(a1) * R_j(a2) * R_k(a3) with angles in
// application order; extraction of extrinsic conventions reduces to this
// on the transpose with negated angles.
struct OrderedAngles {
  double first, middle, last;
  bool locked;
};

OrderedAngles intrinsic_decompose(const Mat3& R, const std::array<Axis, 3>& order) {
  const int i = static_cast<int>(order[0]);
  const int j = static_cast<int>(order[1]);
  const int k = static_cast<int>(order[2]);
  const double sign = permutation_sign(order);

  const double s2 = std::clamp(sign * R(i, k), -1.0, 1.0);
  // Tight lock window: snapping the middle angle to ±90 costs about
  // sqrt(2 * (1 - |s2|)) radians, which must stay below the round-trip
  // tolerance of 1e-7 rad.
  const bool locked = std::fabs(s2) >= 1.0 - 1e-15;

  OrderedAngles a{};
  a.locked = locked;
  a.middle = rad2deg(std::asin(s2));
  if (!locked) {
    a.first = rad2deg(std::atan2(-sign * R(j, k), R(k, k)));
    a.last = rad2deg(std::atan2(-sign * R(i, j), R(i, i)));
  } else {
    // Only first ± last is determined; assign it all to the first rotation.
    a.last = 0.0;
    const Mat3 M = R * axis_rotation(order[1], -a.middle);  // ≈ pure i-rotation
    const auto [u, v] = retained_axes(order[0]);
    a.first = rad2deg(std::atan2(M(v, u), M(u, u)));
  }
  return a;
}

}  // namespace

Mat3 euler_to_rotation(const EulerAngles& e, const RotationConvention& c) {
  const Mat3 r0 = axis_rotation(c.order[0], e.component(c.order[0]));
  const Mat3 r1 = axis_rotation(c.order[1], e.component(c.order[1]));
  const Mat3 r2 = axis_rotation(c.order[2], e.component(c.order[2]));
  // Intrinsic: each rotation is about the already-rotated axes, which is
  // right-multiplication; extrinsic chains about the fixed world axes.
  return c.mode == EulerMode::intrinsic ? r0 * r1 * r2 : r2 * r1 * r0;
}

EulerDecomposition rotation_to_euler(const Mat3& r, const RotationConvention& c) {
  const Mat3 gram = r.transpose() * r;
  if ((gram - Mat3::Identity()).cwiseAbs().maxCoeff() > 1e-6 ||
      std::fabs(r.determinant() - 1.0) > 1e-6)
    throw Error(Errc::not_a_rotation, "matrix is not orthonormal with det +1");

  OrderedAngles a{};
  if (c.mode == EulerMode::intrinsic) {
    a = intrinsic_decompose(r, c.order);
  } else {
    // R = R_k(a3)·R_j(a2)·R_i(a1)  =>  Rᵀ = R_i(-a1)·R_j(-a2)·R_k(-a3).
    a = intrinsic_decompose(r.transpose(), c.order);
    a.first = -a.first;
    a.middle = -a.middle;
    a.last = -a.last;
  }

  EulerDecomposition out;
  out.gimbal_locked = a.locked;
  out.angles.component(c.order[0]) = wrap_degrees(a.first);
  out.angles.component(c.order[1]) = wrap_degrees(a.middle);
  out.angles.component(c.order[2]) = wrap_degrees(a.last);
  return out;
}

double rotation_angle_deg(const Mat3& a, const Mat3& b) {
  const Mat3 rel = a.transpose() * b;
  const Vec3 axis(rel(2, 1) - rel(1, 2), rel(0, 2) - rel(2, 0), rel(1, 0) - rel(0, 1));
  const double s = 0.5 * axis.norm();
  const double cosv = std::clamp((rel.trace() - 1.0) / 2.0, -1.0, 1.0);
  return rad2deg(std::atan2(s, cosv));
}

}  // namespace mocap
