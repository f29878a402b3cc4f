#pragma once

// Exact enumeration of lattice points on spheres |x|^2 = m in Z^d, d = 2..5.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace torlab {

struct ShellSpec {
  int d = 2;        // dimension, 2..5
  std::int64_t m = 0;  // norm-square, lambda^2

  void validate() const {
    if (d < 2 || d > 5) throw std::invalid_argument("ShellSpec: d must be in 2..5");
    if (m < 0) throw std::invalid_argument("ShellSpec: m must be non-negative");
  }
  double lambda() const { return std::sqrt(static_cast<double>(m)); }
};

using LatticePoint = std::vector<std::int64_t>;

struct Shell {
  ShellSpec spec;
  std::vector<LatticePoint> points;  // lexicographic order

  std::size_t size() const { return points.size(); }
};

namespace detail {

// Largest s with s*s <= n, exact.
inline std::int64_t isqrt(std::int64_t n) {
  if (n < 0) return -1;
  auto s = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (s > 0 && s * s > n) --s;
  while ((s + 1) * (s + 1) <= n) ++s;
  return s;
}

inline bool is_square(std::int64_t n, std::int64_t& root) {
  if (n < 0) return false;
  root = isqrt(n);
  return root * root == n;
}

// Count of (x, y) in Z^2 with x^2 + y^2 = m, by direct scan over x.
inline std::uint64_t count_two_squares(std::int64_t m) {
  if (m == 0) return 1;
  std::uint64_t count = 0;
  const std::int64_t xmax = isqrt(m);
  for (std::int64_t x = -xmax; x <= xmax; ++x) {
    std::int64_t r;
    if (is_square(m - x * x, r)) count += (r == 0) ? 1 : 2;
  }
  return count;
}

template <typename Visit>
void enumerate_rec(int d, std::int64_t m, LatticePoint& prefix, Visit&& visit) {
  if (d == 2) {
    const std::int64_t xmax = isqrt(m);
    for (std::int64_t x = -xmax; x <= xmax; ++x) {
      std::int64_t r;
      if (!is_square(m - x * x, r)) continue;
      prefix.push_back(x);
      if (r == 0) {
        prefix.push_back(0);
        visit(prefix);
        prefix.pop_back();
      } else {
        prefix.push_back(-r);
        visit(prefix);
        prefix.back() = r;
        visit(prefix);
        prefix.pop_back();
      }
      prefix.pop_back();
    }
    return;
  }
  const std::int64_t xmax = isqrt(m);
  for (std::int64_t x = -xmax; x <= xmax; ++x) {
    prefix.push_back(x);
    enumerate_rec(d - 1, m - x * x, prefix, visit);
    prefix.pop_back();
  }
}

}  // namespace detail

// r_2(m) via the classical divisor formula 4*(d_1(m) - d_3(m)), from the
// factorization of m.  Convention r_2(0) = 1.  Independent of the scan above.
inline std::uint64_t two_squares_count_oracle(std::int64_t m) {
  if (m < 0) throw std::invalid_argument("two_squares_count_oracle: m < 0");
  if (m == 0) return 1;
  std::int64_t n = m;
  while (n % 2 == 0) n /= 2;
  std::uint64_t product = 1;
  for (std::int64_t p = 3; p * p <= n; p += 2) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) { n /= p; ++e; }
    if (p % 4 == 3) {
      if (e % 2) return 0;
    } else {
      product *= static_cast<std::uint64_t>(e + 1);
    }
  }
  if (n > 1) {
    if (n % 4 == 3) return 0;
    product *= 2;
  }
  return 4 * product;
}

// Number of solutions of x_1^2 + ... + x_d^2 = m without materializing them.
inline std::uint64_t shell_count(const ShellSpec& spec) {
  spec.validate();
  if (spec.d == 2) return detail::count_two_squares(spec.m);
  std::uint64_t total = 0;
  const std::int64_t xmax = detail::isqrt(spec.m);
  for (std::int64_t x = -xmax; x <= xmax; ++x) {
    ShellSpec tail{spec.d - 1, spec.m - x * x};
    total += shell_count(tail);
  }
  return total;
}

// All integer solutions of x_1^2 + ... + x_d^2 = m, lexicographically sorted.
// d = 2 scans the leading coordinate and tests perfect-square remainders;
// d >= 3 recurses on leading coordinates down to the two-square tail.
inline Shell enumerate_shell(const ShellSpec& spec,
                             std::uint64_t max_points = 10'000'000) {
  spec.validate();
  const std::uint64_t predicted = shell_count(spec);
  if (predicted > max_points)
    throw std::length_error("enumerate_shell: shell of " + std::to_string(predicted) +
                            " points exceeds budget of " + std::to_string(max_points));
  Shell shell;
  shell.spec = spec;
  shell.points.reserve(predicted);
  LatticePoint prefix;
  prefix.reserve(spec.d);
  detail::enumerate_rec(spec.d, spec.m, prefix,
                        [&](const LatticePoint& p) { shell.points.push_back(p); });
  std::sort(shell.points.begin(), shell.points.end());
  return shell;
}

inline double squared_distance(const LatticePoint& a, const LatticePoint& b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::int64_t d = a[i] - b[i];
    s += d * d;
  }
  return static_cast<double>(s);
}

// Minimal Euclidean distance between distinct shell points; >= 1 for integer
// points.  O(n^2) pair scan.
inline double min_pairwise_distance(const Shell& shell) {
  const auto& pts = shell.points;
  if (pts.size() < 2)
    throw std::invalid_argument("min_pairwise_distance: need at least 2 points");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      best = std::min(best, squared_distance(pts[i], pts[j]));
  return std::sqrt(best);
}

}  // namespace torlab
