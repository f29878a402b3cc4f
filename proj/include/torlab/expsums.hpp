#pragma once

// Direct evaluation of the bilinear exponential sums with phase
// beta*x*y + beta^{1/3}*x^2*y^2 over beta^{-1/2}-separated subsets of [0,1],
// the cap-pair double sum with support-function phase, and power-law
// exponent fitting.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "torlab/caps.hpp"
#include "torlab/lattice.hpp"
#include "torlab/restriction.hpp"
#include "torlab/surface.hpp"

namespace torlab {

struct SeparatedSet {
  double beta = 0;
  std::vector<double> points;  // sorted, in [0,1], consecutive gaps > beta^{-1/2}

  void validate() const {
    if (!(beta >= 1)) throw std::invalid_argument("SeparatedSet: beta must be >= 1");
    const double min_gap = 1.0 / std::sqrt(beta);
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (points[i] < 0 || points[i] > 1)
        throw std::invalid_argument("SeparatedSet: points must lie in [0,1]");
      if (i > 0 && !(points[i] - points[i - 1] > min_gap))
        throw std::invalid_argument("SeparatedSet: gap at or below beta^{-1/2}");
    }
  }
};

struct SumRecord {
  double parameter = 0;      // beta or lambda
  double magnitude = 0;
  double trivial_bound = 0;  // |X| |Y| or the coefficient-mass bound
  double normalized = 0;     // magnitude / reference power of the parameter
};

enum class SetPattern { maximal_grid, random_greedy, perturbed_grid };

// Sum over x in X, y in Y of e(beta x y + beta^{1/3} x^2 y^2).  The phase is
// reduced mod 1 in extended precision before the unimodular evaluation; at
// beta = 1e6 the raw phase reaches 1e6 and double rounding would corrupt the
// low bits that survive the reduction.
inline Complex bilinear_sum(double beta, const SeparatedSet& x_set,
                            const SeparatedSet& y_set, bool drop_nonlinear_term = false) {
  if (x_set.beta != beta || y_set.beta != beta)
    throw std::invalid_argument("bilinear_sum: set beta does not match");
  const long double b = beta;
  const long double b13 = std::cbrt(static_cast<long double>(beta));
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  Complex sum = 0;
  Complex comp = 0;
  for (const double x : x_set.points) {
    for (const double y : y_set.points) {
      const long double xy = static_cast<long double>(x) * y;
      long double phase = b * xy;
      if (!drop_nonlinear_term) phase += b13 * xy * xy;
      phase -= std::floor(phase);
      const long double t = two_pi * phase;
      const Complex term(static_cast<double>(std::cos(t)),
                         static_cast<double>(std::sin(t)));
      const Complex y1 = term - comp;
      const Complex t1 = sum + y1;
      comp = (t1 - sum) - y1;
      sum = t1;
    }
  }
  return sum;
}

// Valid separated sets by construction.
//   maximal_grid: spacing 1/k for the largest k with 1/k > beta^{-1/2}.
//   random_greedy: uniform proposals, rejecting separation violations, until
//     a long run of rejections.
//   perturbed_grid: the maximal grid jittered inside the separation slack
//     (up to 25% of the gap when the slack allows it).
inline SeparatedSet separated_set(double beta, SetPattern pattern, std::uint64_t seed) {
  if (!(beta >= 1)) throw std::invalid_argument("separated_set: beta must be >= 1");
  const double min_gap = 1.0 / std::sqrt(beta);
  SeparatedSet out;
  out.beta = beta;

  int k = static_cast<int>(std::floor(std::sqrt(beta)));
  while (k >= 1 && !(1.0 / k > min_gap)) --k;
  if (k < 1) k = 1;
  const double gap = 1.0 / k;

  if (pattern == SetPattern::maximal_grid) {
    for (int i = 0; i <= k; ++i) out.points.push_back(std::min(1.0, i * gap));
  } else if (pattern == SetPattern::perturbed_grid) {
    std::mt19937_64 rng(seed);
    // independent jitters of amplitude A keep gaps > min_gap iff 2A < gap - min_gap
    const double amp = std::min(0.25 * gap, 0.499 * (gap - min_gap));
    std::uniform_real_distribution<double> jitter(-amp, amp);
    for (int i = 0; i <= k; ++i) {
      const double p = i * gap + jitter(rng);
      out.points.push_back(std::clamp(p, 0.0, 1.0));
    }
    std::sort(out.points.begin(), out.points.end());
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::vector<double> pts;  // kept sorted; insertion point found by binary search
    const int saturation = 500 + 2 * static_cast<int>(std::sqrt(beta));
    int rejects = 0;
    while (rejects < saturation) {
      const double p = uniform(rng);
      auto it = std::lower_bound(pts.begin(), pts.end(), p);
      const bool ok = (it == pts.end() || *it - p > min_gap) &&
                      (it == pts.begin() || p - *(it - 1) > min_gap);
      if (ok) { pts.insert(it, p); rejects = 0; } else { ++rejects; }
    }
    out.points = std::move(pts);
  }
  out.validate();
  return out;
}

// The cap-pair double sum
//   sum over n in capA, n' in capB of phi_hat(n) conj(phi_hat(n')) e(h(n-n'))
// with h the support function of the surface.  Points without a coefficient
// contribute zero.  The cap separation contract (geodesic distance between
// the caps at least 10r) is checked, not fixed up.
inline Complex cap_pair_sum(const Shell& shell, const Hypersurface& surface,
                            const Cap& cap_a, const Cap& cap_b,
                            const CoefficientVector& coeffs) {
  if (shell.spec.d != surface.dim())
    throw std::invalid_argument("cap_pair_sum: shell/surface dimension mismatch");
  if (static_cast<int>(cap_a.center.size()) != shell.spec.d ||
      static_cast<int>(cap_b.center.size()) != shell.spec.d)
    throw std::invalid_argument("cap_pair_sum: cap dimension mismatch");
  const double lambda = shell.spec.lambda();
  const double r = std::max(cap_a.size_r, cap_b.size_r);
  double dot = 0;
  for (std::size_t i = 0; i < cap_a.center.size(); ++i)
    dot += cap_a.center[i] * cap_b.center[i];
  const double angle = std::acos(std::clamp(dot, -1.0, 1.0));
  const double angular_radius_a = 2 * std::asin(std::min(1.0, cap_a.size_r / (2 * lambda)));
  const double angular_radius_b = 2 * std::asin(std::min(1.0, cap_b.size_r / (2 * lambda)));
  const double geodesic_gap = lambda * (angle - angular_radius_a - angular_radius_b);
  if (!(geodesic_gap >= 10 * r))
    throw std::invalid_argument("cap_pair_sum: caps must be at mutual distance >= 10r");

  std::vector<const LatticePoint*> in_a, in_b;
  for (const auto& p : shell.points) {
    if (cap_a.contains(p, lambda)) in_a.push_back(&p);
    if (cap_b.contains(p, lambda)) in_b.push_back(&p);
  }
  Complex sum = 0;
  std::vector<double> diff(shell.spec.d);
  for (const auto* pa : in_a) {
    const auto ita = coeffs.entries.find(*pa);
    if (ita == coeffs.entries.end()) continue;
    for (const auto* pb : in_b) {
      const auto itb = coeffs.entries.find(*pb);
      if (itb == coeffs.entries.end()) continue;
      for (int k = 0; k < shell.spec.d; ++k)
        diff[k] = static_cast<double>((*pa)[k] - (*pb)[k]);
      sum += ita->second * std::conj(itb->second) * unit_phase(support_function(surface, diff));
    }
  }
  return sum;
}

struct PowerLawFit {
  double slope = 0;
  double intercept = 0;
  double residual = 0;  // RMS deviation in log-log space
};

// Least squares of log(magnitude) against log(parameter).  Magnitudes below
// the floor are clamped to it.
inline PowerLawFit exponent_fit(const std::vector<SumRecord>& records,
                                double magnitude_floor = 1e-30) {
  std::vector<double> xs, ys;
  for (const auto& r : records) {
    if (!(r.parameter > 0)) continue;
    xs.push_back(std::log(r.parameter));
    ys.push_back(std::log(std::max(r.magnitude, magnitude_floor)));
  }
  if (xs.size() < 3)
    throw std::invalid_argument("exponent_fit: need at least 3 usable records");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) { mx += xs[i]; my += ys[i]; }
  mx /= xs.size();
  my /= ys.size();
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0)
    throw std::invalid_argument("exponent_fit: parameters must not be all equal");
  PowerLawFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (fit.intercept + fit.slope * xs[i]);
    rss += e * e;
  }
  fit.residual = std::sqrt(rss / xs.size());
  return fit;
}

}  // namespace torlab
