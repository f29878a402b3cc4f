#pragma once

// Cap and arc statistics on lattice shells: sliding-window arc maxima,
// three-point arc minima, proximity-graph cluster partitions, coplanarity
// tests, and cube-cell histograms with their mean-square statistic.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "torlab/lattice.hpp"

namespace torlab {

struct Cap {
  std::vector<double> center;  // unit direction
  double size_r = 0;           // chordal radius

  Cap(std::vector<double> c, double r) : center(std::move(c)), size_r(r) {
    double n2 = 0;
    for (double x : center) n2 += x * x;
    if (std::abs(n2 - 1.0) > 1e-12)
      throw std::invalid_argument("Cap: center must be a unit vector");
    if (!(size_r > 0)) throw std::invalid_argument("Cap: size_r must be positive");
  }

  // membership of a lattice point on the sphere of radius lambda,
  // chordal convention: |p - lambda*center| <= size_r
  bool contains(const LatticePoint& p, double lambda) const {
    double s = 0;
    for (std::size_t i = 0; i < center.size(); ++i) {
      const double d = static_cast<double>(p[i]) - lambda * center[i];
      s += d * d;
    }
    return s <= size_r * size_r;
  }
};

struct ClusterPartition {
  std::vector<std::vector<LatticePoint>> groups;
  double threshold = 0;
};

struct CellHistogram {
  double cell_side = 0;
  std::map<std::vector<std::int64_t>, std::uint64_t> counts;
};

enum class CapMode { exact2d, centered };

namespace detail {

// Angles of a d=2 shell, sorted ascending in [0, 2*pi).
inline std::vector<double> sorted_angles(const Shell& shell) {
  std::vector<double> angles;
  angles.reserve(shell.points.size());
  const double two_pi = 2 * std::numbers::pi;
  for (const auto& p : shell.points) {
    double a = std::atan2(static_cast<double>(p[1]), static_cast<double>(p[0]));
    if (a < 0) a += two_pi;
    angles.push_back(a);
  }
  std::sort(angles.begin(), angles.end());
  return angles;
}

}  // namespace detail

// Maximal number of shell points in a cap of size r.  exact2d: exact maximum
// over all arcs of arc-length r (sliding window over angularly sorted points).
// centered: maximum over caps of chordal radius r centered at shell points;
// satisfies centered(r) <= exact(r) <= centered(2r).
inline std::uint64_t max_cap_count(const Shell& shell, double r, CapMode mode) {
  if (shell.points.empty())
    throw std::invalid_argument("max_cap_count: empty shell");
  if (!(r > 0)) throw std::invalid_argument("max_cap_count: r must be positive");
  if (mode == CapMode::exact2d) {
    if (shell.spec.d != 2)
      throw std::invalid_argument("max_cap_count: exact2d requires d = 2");
    const double lambda = shell.spec.lambda();
    const double two_pi = 2 * std::numbers::pi;
    if (r >= two_pi * lambda || lambda == 0) return shell.points.size();
    const auto angles = detail::sorted_angles(shell);
    const std::size_t n = angles.size();
    const double width = r / lambda;  // angular window
    std::uint64_t best = 1;
    std::size_t j = 0;
    for (std::size_t i = 0; i < n; ++i) {
      // j walks over the unrolled circle; angle of k >= n is angles[k-n]+2pi
      if (j < i + 1) j = i + 1;
      while (j < i + n) {
        const double aj = (j < n) ? angles[j] : angles[j - n] + two_pi;
        if (aj - angles[i] > width) break;
        ++j;
      }
      best = std::max<std::uint64_t>(best, j - i);
    }
    return best;
  }
  // centered mode, any dimension
  const double r2 = r * r;
  std::uint64_t best = 0;
  for (const auto& p : shell.points) {
    std::uint64_t c = 0;
    for (const auto& q : shell.points)
      if (squared_distance(p, q) <= r2) ++c;
    best = std::max(best, c);
  }
  return best;
}

// Minimal arc length (on the circle of radius lambda) of an arc containing at
// least 3 shell points, d = 2.
inline double min_enclosing_arc_of_three(const Shell& shell) {
  if (shell.spec.d != 2)
    throw std::invalid_argument("min_enclosing_arc_of_three: d must be 2");
  if (shell.points.size() < 3)
    throw std::invalid_argument("min_enclosing_arc_of_three: need at least 3 points");
  const auto angles = detail::sorted_angles(shell);
  const std::size_t n = angles.size();
  const double two_pi = 2 * std::numbers::pi;
  double best = two_pi;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = i + 2;
    const double ak = (k < n) ? angles[k] : angles[k - n] + two_pi;
    best = std::min(best, ak - angles[i]);
  }
  return best * shell.spec.lambda();
}

// Connected components of the proximity graph joining points at distance
// <= threshold.  Groups ordered by smallest lexicographic member; points
// inside each group stay in lexicographic order.
inline ClusterPartition cluster_partition(const Shell& shell, double threshold) {
  if (shell.points.empty())
    throw std::invalid_argument("cluster_partition: empty shell");
  if (!(threshold > 0))
    throw std::invalid_argument("cluster_partition: threshold must be positive");
  const auto& pts = shell.points;
  const std::size_t n = pts.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  const double t2 = threshold * threshold;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (squared_distance(pts[i], pts[j]) <= t2) parent[find(i)] = find(j);

  std::map<std::size_t, std::vector<LatticePoint>> by_root;
  for (std::size_t i = 0; i < n; ++i) by_root[find(i)].push_back(pts[i]);
  ClusterPartition part;
  part.threshold = threshold;
  for (auto& [root, group] : by_root) part.groups.push_back(std::move(group));
  // points are lexicographic, so ordering groups by first member is
  // ordering by smallest lexicographic member
  std::sort(part.groups.begin(), part.groups.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return part;
}

// True iff the affine span of the points has dimension <= 2 (d = 3 only).
// Exact integer test: all 3x3 determinants of difference triples vanish iff
// no two independent differences have a third outside their plane.
inline bool coplanarity_check(const std::vector<LatticePoint>& points) {
  if (points.empty()) throw std::invalid_argument("coplanarity_check: empty list");
  for (const auto& p : points)
    if (p.size() != 3) throw std::invalid_argument("coplanarity_check: d must be 3");
  if (points.size() <= 3) return true;
  std::vector<std::array<std::int64_t, 3>> diffs;
  diffs.reserve(points.size() - 1);
  for (std::size_t i = 1; i < points.size(); ++i)
    diffs.push_back({points[i][0] - points[0][0], points[i][1] - points[0][1],
                     points[i][2] - points[0][2]});
  // find two independent differences, then test the rest against their plane
  auto cross = [](const std::array<std::int64_t, 3>& a,
                  const std::array<std::int64_t, 3>& b) {
    return std::array<std::int64_t, 3>{a[1] * b[2] - a[2] * b[1],
                                       a[2] * b[0] - a[0] * b[2],
                                       a[0] * b[1] - a[1] * b[0]};
  };
  std::array<std::int64_t, 3> normal{0, 0, 0};
  std::size_t first = 0;
  while (first < diffs.size() &&
         diffs[first] == std::array<std::int64_t, 3>{0, 0, 0})
    ++first;
  if (first == diffs.size()) return true;  // all points coincide
  for (std::size_t i = first + 1; i < diffs.size(); ++i) {
    normal = cross(diffs[first], diffs[i]);
    if (normal != std::array<std::int64_t, 3>{0, 0, 0}) break;
  }
  if (normal == std::array<std::int64_t, 3>{0, 0, 0}) return true;  // collinear
  for (const auto& v : diffs)
    if (v[0] * normal[0] + v[1] * normal[1] + v[2] * normal[2] != 0) return false;
  return true;
}

// Tally points into half-open cube cells floor(coords / cell_side), anchored
// at the origin.
inline CellHistogram cell_histogram(const Shell& shell, double cell_side) {
  if (!(cell_side > 0))
    throw std::invalid_argument("cell_histogram: cell_side must be positive");
  CellHistogram hist;
  hist.cell_side = cell_side;
  std::vector<std::int64_t> cell(shell.spec.d);
  for (const auto& p : shell.points) {
    for (int i = 0; i < shell.spec.d; ++i)
      cell[i] = static_cast<std::int64_t>(
          std::floor(static_cast<double>(p[i]) / cell_side));
    ++hist.counts[cell];
  }
  return hist;
}

// Sum over nonzero cells of the squared occupancy.
inline std::uint64_t mean_square_statistic(const CellHistogram& hist) {
  std::uint64_t s = 0;
  for (const auto& [cell, c] : hist.counts) s += c * c;
  return s;
}

}  // namespace torlab
