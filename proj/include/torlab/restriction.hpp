#pragma once

// The restriction quadratic form: Gram matrices of sigma_hat at frequency
// differences, restriction norms both through the Gram factorization and by
// direct quadrature, extreme eigenvalues, and the cluster-decomposition
// certificate (per-group spectra plus a row-sum bound on the inter-group
// coupling).

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include "torlab/caps.hpp"
#include "torlab/hermitian_eigen.hpp"
#include "torlab/lattice.hpp"
#include "torlab/surface.hpp"

namespace torlab {

struct CoefficientVector {
  std::map<LatticePoint, Complex> entries;

  double norm_sq() const {
    double s = 0;
    for (const auto& [p, v] : entries) s += std::norm(v);
    return s;
  }
};

struct GramMatrix {
  std::vector<LatticePoint> index;
  HermitianMatrix entries;  // entries(i,j) = sigma_hat(n_j - n_i)
  double tol = 0;
};

struct RestrictionSweepRecord {
  std::int64_t m = 0;
  std::size_t shell_size = 0;
  double lambda_min = 0;
  double lambda_max = 0;
  double offdiag_total = 0;
  double c_est = 0;
  double C_est = 0;
  std::size_t group_count = 0;
  std::size_t max_group_size = 0;
};

// entries(i,j) = sigma_hat(n_j - n_i); upper triangle computed, lower
// mirrored so the matrix is exactly Hermitian.
inline GramMatrix gram_matrix(const std::vector<LatticePoint>& points,
                              const Hypersurface& surface, double tol = 1e-8) {
  if (points.empty()) throw std::invalid_argument("gram_matrix: empty point list");
  const std::size_t n = points.size();
  for (const auto& p : points)
    if (static_cast<int>(p.size()) != surface.dim())
      throw std::invalid_argument("gram_matrix: point/surface dimension mismatch");
  GramMatrix g;
  g.index = points;
  g.tol = tol;
  g.entries = HermitianMatrix(n);
  std::vector<double> diff(surface.dim());
  for (std::size_t i = 0; i < n; ++i) {
    g.entries(i, i) = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      for (int k = 0; k < surface.dim(); ++k)
        diff[k] = static_cast<double>(points[j][k] - points[i][k]);
      const Complex v = sigma_hat_auto(surface, diff, tol).value;
      g.entries(i, j) = v;
      g.entries(j, i) = std::conj(v);
    }
  }
  return g;
}

// v* G v over the Gram index.
inline double restriction_norm_sq(const CoefficientVector& coeffs, const GramMatrix& gram) {
  const std::size_t n = gram.index.size();
  std::vector<Complex> v(n, Complex(0));
  std::size_t matched = 0;
  for (std::size_t i = 0; i < n; ++i) {
    auto it = coeffs.entries.find(gram.index[i]);
    if (it != coeffs.entries.end()) {
      v[i] = it->second;
      ++matched;
    }
  }
  if (matched != coeffs.entries.size())
    throw std::invalid_argument("restriction_norm_sq: coefficient support not in Gram index");
  Complex acc = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      acc += std::conj(v[i]) * gram.entries(i, j) * v[j];
  return acc.real();
}

namespace detail {

// phi(x) = sum over support of phi_hat(n) e(n . x)
inline Complex eigenfunction_at(const CoefficientVector& coeffs, const double* x, int d) {
  Complex acc = 0;
  for (const auto& [n, amp] : coeffs.entries) {
    double dot = 0;
    for (int k = 0; k < d; ++k) dot += static_cast<double>(n[k]) * x[k];
    acc += amp * unit_phase(dot);
  }
  return acc;
}

}  // namespace detail

// Independent oracle: integral over Sigma of |phi|^2 dsigma by direct
// oscillation-resolving quadrature, never touching the Gram factorization.
inline double direct_restriction_norm_sq(const CoefficientVector& coeffs,
                                         const Hypersurface& surface, double tol = 1e-7) {
  if (coeffs.entries.empty()) return 0.0;
  double max_freq = 0;
  for (const auto& [n, amp] : coeffs.entries) {
    double s = 0;
    for (auto c : n) s += static_cast<double>(c) * c;
    max_freq = std::max(max_freq, std::sqrt(s));
  }
  const double osc = 2 * max_freq * surface.max_axis();  // |phi|^2 bandwidth across Sigma
  const double pi = std::numbers::pi;
  const auto& ax = surface.semi_axes();
  const auto& x0 = surface.center();

  if (surface.dim() == 2) {
    auto value_at = [&](int nnodes) {
      double acc = 0, speed_acc = 0;
      for (int i = 0; i < nnodes; ++i) {
        const double t = 2 * pi * (i + 0.5) / nnodes;
        const double x[2] = {x0[0] + ax[0] * std::cos(t), x0[1] + ax[1] * std::sin(t)};
        const double speed = std::hypot(ax[0] * std::sin(t), ax[1] * std::cos(t));
        acc += speed * std::norm(detail::eigenfunction_at(coeffs, x, 2));
        speed_acc += speed;
      }
      return acc / speed_acc;
    };
    int n = std::max(128, 16 * (1 + static_cast<int>(std::ceil(osc))));
    double prev = value_at(n);
    for (int iter = 0; iter < 10; ++iter) {
      n *= 2;
      const double cur = value_at(n);
      const double err = std::abs(cur - prev);
      prev = cur;
      if (err <= tol) return cur;
    }
    throw std::runtime_error("direct_restriction_norm_sq: quadrature did not converge");
  }

  // d = 3: product rule on the unit-sphere substitution, GL panels in the
  // polar angle, trapezoid in the azimuth
  auto value_at = [&](int panels, int nphi) {
    double acc = 0, weight_acc = 0;
    auto slice = [&](double theta, double w_gl) {
      const double st = std::sin(theta), ct = std::cos(theta);
      for (int i = 0; i < nphi; ++i) {
        const double phi = 2 * pi * (i + 0.5) / nphi;
        const double u[3] = {st * std::cos(phi), st * std::sin(phi), ct};
        const double x[3] = {x0[0] + ax[0] * u[0], x0[1] + ax[1] * u[1],
                             x0[2] + ax[2] * u[2]};
        const double w = st *
            std::sqrt(u[0] * u[0] / (ax[0] * ax[0]) + u[1] * u[1] / (ax[1] * ax[1]) +
                      u[2] * u[2] / (ax[2] * ax[2]));
        acc += w_gl * w * std::norm(detail::eigenfunction_at(coeffs, x, 3));
        weight_acc += w_gl * w;
      }
    };
    const double h = pi / panels;
    for (int p = 0; p < panels; ++p) {
      const double mid = (p + 0.5) * h;
      for (int k = 0; k < 8; ++k) {
        const double dx = 0.5 * h * detail::gl16_x[k];
        slice(mid + dx, detail::gl16_w[k]);
        slice(mid - dx, detail::gl16_w[k]);
      }
    }
    return acc / weight_acc;
  };
  int panels = std::max(4, static_cast<int>(std::ceil(0.5 * osc)));
  int nphi = std::max(32, 8 * (1 + static_cast<int>(std::ceil(osc))));
  double prev = value_at(panels, nphi);
  for (int iter = 0; iter < 6; ++iter) {
    panels *= 2;
    nphi *= 2;
    const double cur = value_at(panels, nphi);
    const double err = std::abs(cur - prev);
    prev = cur;
    if (err <= tol) return cur;
  }
  throw std::runtime_error("direct_restriction_norm_sq: quadrature did not converge");
}

// (lambda_min, lambda_max) with a residual check on the extremal pairs.
inline std::pair<double, double> extreme_eigenvalues(const GramMatrix& gram) {
  const auto eig = hermitian_eigen(gram.entries);
  const double norm = gram.entries.frobenius_norm();
  const double lo = eig.values.front(), hi = eig.values.back();
  if (eigen_residual(gram.entries, eig.vectors.front(), lo) > 1e-8 * std::max(1.0, norm) ||
      eigen_residual(gram.entries, eig.vectors.back(), hi) > 1e-8 * std::max(1.0, norm))
    throw std::runtime_error("extreme_eigenvalues: residual contract violated");
  return {lo, hi};
}

// Deterministic sample, uniform on the complex unit sphere of the
// coefficient space.
inline CoefficientVector random_coefficients(const std::vector<LatticePoint>& points,
                                             std::uint64_t seed) {
  if (points.empty()) throw std::invalid_argument("random_coefficients: empty point list");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  CoefficientVector out;
  double norm2 = 0;
  for (const auto& p : points) {
    const Complex z(gauss(rng), gauss(rng));
    out.entries[p] = z;
    norm2 += std::norm(z);
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& [p, z] : out.entries) z *= inv;
  return out;
}

// Cluster-decomposition certificate: per-group extreme eigenvalues plus
// T = max over points of the total |sigma_hat| coupling to other groups
// (a row-sum bound), giving
//   c_est = min_group lambda_min - T,   C_est = max_group lambda_max + T.
inline RestrictionSweepRecord cluster_certificate(const Shell& shell,
                                                  const Hypersurface& surface,
                                                  double threshold, double tol = 1e-8) {
  if (shell.points.empty())
    throw std::invalid_argument("cluster_certificate: empty shell");
  const auto part = cluster_partition(shell, threshold);
  RestrictionSweepRecord rec;
  rec.m = shell.spec.m;
  rec.shell_size = shell.size();
  rec.group_count = part.groups.size();

  double group_min = std::numeric_limits<double>::infinity();
  double group_max = -std::numeric_limits<double>::infinity();
  for (const auto& group : part.groups) {
    rec.max_group_size = std::max(rec.max_group_size, group.size());
    if (group.size() == 1) {
      group_min = std::min(group_min, 1.0);
      group_max = std::max(group_max, 1.0);
      continue;
    }
    const auto g = gram_matrix(group, surface, tol);
    const auto [lo, hi] = extreme_eigenvalues(g);
    group_min = std::min(group_min, lo);
    group_max = std::max(group_max, hi);
  }

  // group id per point, in shell order
  std::map<LatticePoint, std::size_t> group_of;
  for (std::size_t gi = 0; gi < part.groups.size(); ++gi)
    for (const auto& p : part.groups[gi]) group_of[p] = gi;
  double t_max = 0;
  std::vector<double> diff(surface.dim());
  for (const auto& p : shell.points) {
    double row = 0;
    const std::size_t gp = group_of[p];
    for (const auto& q : shell.points) {
      if (group_of[q] == gp) continue;
      for (int k = 0; k < surface.dim(); ++k)
        diff[k] = static_cast<double>(q[k] - p[k]);
      row += std::abs(sigma_hat_auto(surface, diff, tol).value);
    }
    t_max = std::max(t_max, row);
  }
  rec.offdiag_total = t_max;
  rec.c_est = group_min - t_max;
  rec.C_est = group_max + t_max;
  return rec;
}

// One record per m: full-Gram extremes plus the certificate at threshold
// 2 lambda^{1/3}.  Empty shells are skipped.
inline std::vector<RestrictionSweepRecord> spectrum_sweep(
    const Hypersurface& surface, const std::vector<std::int64_t>& m_list,
    double tol = 1e-8, std::vector<std::int64_t>* skipped = nullptr) {
  std::vector<RestrictionSweepRecord> records;
  for (const auto m : m_list) {
    const ShellSpec spec{surface.dim(), m};
    if (shell_count(spec) == 0) {
      if (skipped) skipped->push_back(m);
      continue;
    }
    const auto shell = enumerate_shell(spec);
    const double threshold = 2.0 * std::pow(spec.lambda(), 1.0 / 3.0);
    auto rec = cluster_certificate(shell, surface, threshold, tol);
    const auto full = gram_matrix(shell.points, surface, tol);
    const auto [lo, hi] = extreme_eigenvalues(full);
    rec.lambda_min = lo;
    rec.lambda_max = hi;
    records.push_back(rec);
  }
  return records;
}

}  // namespace torlab
