// Test-only oracles: independent re-implementations used to cross-check
// the library. Keep these free of calls into the code paths they verify.

#ifndef MOCAPCHECK_TESTS_ORACLES_HPP
#define MOCAPCHECK_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mocap/geometry.hpp"
#include "mocap/skeleton.hpp"

namespace oracle {

// Plain arccos-of-normalized-dot angle between the projections of u and v
// onto the plane with `dropped` removed, in degrees.
inline double projected_angle_deg(const mocap::Vec3& u, const mocap::Vec3& v,
                                  mocap::Axis dropped) {
  const auto [a, b] = mocap::retained_axes(dropped);
  const double ua = u[a], ub = u[b], va = v[a], vb = v[b];
  const double nu = std::sqrt(ua * ua + ub * ub);
  const double nv = std::sqrt(va * va + vb * vb);
  const double c = std::clamp((ua * va + ub * vb) / (nu * nv), -1.0, 1.0);
  return mocap::rad2deg(std::acos(c));
}

struct Stats {
  double median, mean, max;
};

// Sort-based statistics, summing in input order.
inline Stats stats(const std::vector<double>& xs) {
  std::vector<double> sorted = xs;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  Stats s{};
  s.median = (n % 2 == 1) ? sorted[n / 2] : (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
  double sum = 0.0;
  for (double x : xs) sum += x;
  s.mean = sum / static_cast<double>(n);
  s.max = sorted.back();
  return s;
}

// Brute-force topology validity: O(n^2) duplicate scan, endpoint scan,
// anchor distinctness, recursive DFS cycle check.
inline bool topology_is_valid(const mocap::SkeletonTopology& t) {
  for (std::size_t i = 0; i < t.joints.size(); ++i) {
    if (t.joints[i].empty()) return false;
    for (std::size_t j = i + 1; j < t.joints.size(); ++j)
      if (t.joints[i] == t.joints[j]) return false;
  }
  auto declared = [&](const std::string& name) {
    for (const auto& j : t.joints)
      if (j == name) return true;
    return false;
  };
  for (const auto& [p, c] : t.edges)
    if (!declared(p) || !declared(c)) return false;
  const auto anchors = t.anchors.as_list();
  for (const auto& a : anchors)
    if (!declared(a)) return false;
  for (std::size_t i = 0; i < anchors.size(); ++i)
    for (std::size_t j = i + 1; j < anchors.size(); ++j)
      if (anchors[i] == anchors[j]) return false;

  std::map<std::string, std::vector<std::string>> adj;
  for (const auto& [p, c] : t.edges) adj[p].push_back(c);
  std::map<std::string, int> color;  // 0 white, 1 gray, 2 black
  bool cyclic = false;
  auto dfs = [&](auto&& self, const std::string& node) -> void {
    color[node] = 1;
    for (const auto& next : adj[node]) {
      if (color[next] == 1) {
        cyclic = true;
        return;
      }
      if (color[next] == 0) self(self, next);
      if (cyclic) return;
    }
    color[node] = 2;
  };
  for (const auto& j : t.joints) {
    if (color[j] == 0) dfs(dfs, j);
    if (cyclic) return false;
  }
  return true;
}

// Residual of a candidate similarity transform on anchor pairs.
inline double alignment_residual(const mocap::Mat3& rotation, const mocap::Vec3& translation,
                                 double scale, const std::vector<mocap::Vec3>& src,
                                 const std::vector<mocap::Vec3>& tgt) {
  double sum = 0.0;
  for (std::size_t i = 0; i < src.size(); ++i)
    sum += (scale * (rotation * src[i]) + translation - tgt[i]).squaredNorm();
  return sum;
}

}  // namespace oracle

#endif  // MOCAPCHECK_TESTS_ORACLES_HPP
