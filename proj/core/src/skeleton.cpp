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

#include "mocap/skeleton.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <deque>
#include <limits>
#include <set>
#include <unordered_map>

namespace mocap {

bool SkeletonTopology::has_joint(const JointId& id) const {
  return std::find(joints.begin(), joints.end(), id) != joints.end();
}

Exercise Exercise::parse(std::string_view s) {
  std::string lower(s);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "squat" || lower == "squats") return {ExerciseKind::squat, "squat"};
  if (lower == "situp" || lower == "situps" || lower == "sit-up")
    return {ExerciseKind::situp, "situp"};
  if (lower == "pushup" || lower == "pushups" || lower == "push-up")
    return {ExerciseKind::pushup, "pushup"};
  return {ExerciseKind::other, std::string(s)};
}

int exercise_rank(const Exercise& e) {
  switch (e.kind) {
    case ExerciseKind::squat: return 0;
    case ExerciseKind::situp: return 1;
    case ExerciseKind::pushup: return 2;
    case ExerciseKind::other: return 3;
  }
  return 3;
}

void MotionSequence::validate() const {
  double prev = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const auto& f = frames[i];
    if (!(f.t > prev))
      throw Error(Errc::timestamp_order,
                  "frame " + std::to_string(i) + " at t=" + std::to_string(f.t) +
                      " does not increase");
    prev = f.t;
    for (const auto& j : topology.joints) {
      auto it = f.positions.find(j);
      if (it == f.positions.end())
        throw Error(Errc::missing_joint, j + " absent in frame " + std::to_string(i));
      if (!it->second.allFinite())
        throw Error(Errc::missing_joint,
                    j + " has a non-finite position in frame " + std::to_string(i));
    }
  }
}

namespace {

// Independent of the test oracle: Kahn-style topological elimination.
bool edges_are_acyclic(const SkeletonTopology& t) {
  std::unordered_map<std::string, int> indegree;
  std::unordered_map<std::string, std::vector<std::string>> out;
  for (const auto& j : t.joints) indegree[j] = 0;
  for (const auto& [parent, child] : t.edges) {
    out[parent].push_back(child);
    ++indegree[child];
  }
  std::deque<std::string> ready;
  for (const auto& [j, d] : indegree)
    if (d == 0) ready.push_back(j);
  std::size_t removed = 0;
  while (!ready.empty()) {
    auto j = ready.front();
    ready.pop_front();
    ++removed;
    for (const auto& c : out[j])
      if (--indegree[c] == 0) ready.push_back(c);
  }
  return removed == t.joints.size();
}

}  // namespace

const SkeletonTopology& validate_topology(const SkeletonTopology& topology) {
  std::set<std::string> seen;
  for (const auto& j : topology.joints) {
    if (j.empty()) throw Error(Errc::duplicate_joint, "empty joint name");
    if (!seen.insert(j).second) throw Error(Errc::duplicate_joint, j);
  }
  for (const auto& [parent, child] : topology.edges) {
    if (!seen.count(parent)) throw Error(Errc::dangling_edge, parent);
    if (!seen.count(child)) throw Error(Errc::dangling_edge, child);
  }
  const auto anchors = topology.anchors.as_list();
  for (const auto& a : anchors)
    if (!seen.count(a))
      throw Error(Errc::missing_anchor, a.empty() ? "<unset>" : a);
  std::set<std::string> distinct(anchors.begin(), anchors.end());
  if (distinct.size() != 4)
    throw Error(Errc::missing_anchor, "anchors are not pairwise distinct");
  if (!edges_are_acyclic(topology))
    throw Error(Errc::cyclic_edges, "edge graph of '" + topology.name + "' has a cycle");
  return topology;
}

const JointMap& validate_joint_map(const JointMap& map) {
  std::set<std::string> targets;
  for (const auto& rule : map.rules) {
    if (!targets.insert(rule.target).second)
      throw Error(Errc::invalid_config, "duplicate map rule for '" + rule.target + "'");
    if (rule.sources.empty())
      throw Error(Errc::invalid_config, "rule for '" + rule.target + "' has no sources");
    double sum = 0.0;
    for (const auto& [src, w] : rule.sources) {
      if (w < 0.0)
        throw Error(Errc::invalid_config,
                    "negative weight for '" + src + "' in rule '" + rule.target + "'");
      sum += w;
    }
    if (std::fabs(sum - 1.0) > 1e-9)
      throw Error(Errc::invalid_config,
                  "weights for '" + rule.target + "' sum to " + std::to_string(sum));
  }
  return map;
}

JointMap identity_map(const SkeletonTopology& topology) {
  JointMap map;
  map.target_topology = topology.name;
  map.rules.reserve(topology.joints.size());
  for (const auto& j : topology.joints) map.rules.push_back({j, {{j, 1.0}}});
  return map;
}

namespace {

SkeletonFrame map_frame(const SkeletonFrame& frame, const JointMap& map, bool lenient) {
  SkeletonFrame out;
  out.t = frame.t;
  for (const auto& rule : map.rules) {
    Vec3 p = Vec3::Zero();
    bool complete = true;
    for (const auto& [src, w] : rule.sources) {
      auto it = frame.positions.find(src);
      if (it == frame.positions.end()) {
        if (lenient) {
          complete = false;
          break;
        }
        throw Error(Errc::missing_source_joint, src);
      }
      p += w * it->second;
    }
    if (complete) out.positions.emplace(rule.target, p);
  }
  return out;
}

}  // namespace

SkeletonFrame map_topology(const SkeletonFrame& frame, const JointMap& map) {
  return map_frame(frame, map, /*lenient=*/false);
}

SkeletonFrame map_topology_lenient(const SkeletonFrame& frame, const JointMap& map) {
  return map_frame(frame, map, /*lenient=*/true);
}

}  // namespace mocap
