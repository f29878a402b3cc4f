#pragma once

// Full eigendecomposition of dense Hermitian matrices by cyclic complex
// Jacobi rotations.  Sizes here are the Gram matrices of lattice shells
// (n up to a few hundred), where Jacobi's unconditional stability beats
// anything fancier.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace torlab {

using Complex = std::complex<double>;

// Row-major dense Hermitian matrix.
struct HermitianMatrix {
  std::size_t n = 0;
  std::vector<Complex> a;  // n*n entries

  HermitianMatrix() = default;
  explicit HermitianMatrix(std::size_t size) : n(size), a(size * size) {}

  Complex& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }

  double max_hermitian_defect() const {
    double defect = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j)
        defect = std::max(defect, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return defect;
  }

  double frobenius_norm() const {
    double s = 0;
    for (const auto& v : a) s += std::norm(v);
    return std::sqrt(s);
  }
};

struct EigenDecomposition {
  std::vector<double> values;            // ascending
  std::vector<std::vector<Complex>> vectors;  // vectors[k] pairs with values[k]
};

// Cyclic Jacobi: repeatedly annihilate the (p,q) entry with the unitary
//   G = [ c        s e^{i phi} ]
//       [ -s e^{-i phi}   c    ],   a_pq = |a_pq| e^{i phi},
// sweeping until the off-diagonal mass is at machine level.
inline EigenDecomposition hermitian_eigen(const HermitianMatrix& input,
                                          double hermitian_tol = 1e-8) {
  const std::size_t n = input.n;
  if (n == 0) throw std::invalid_argument("hermitian_eigen: empty matrix");
  if (input.max_hermitian_defect() > hermitian_tol * std::max(1.0, input.frobenius_norm()))
    throw std::invalid_argument("hermitian_eigen: matrix is not Hermitian within tolerance");

  HermitianMatrix m = input;
  // symmetrize exactly so rotations preserve hermiticity bit-for-bit
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = Complex(m(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m(i, j) = avg;
      m(j, i) = std::conj(avg);
    }
  }
  std::vector<std::vector<Complex>> v(n, std::vector<Complex>(n, Complex(0)));
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;  // v[row][col], columns are vectors

  const double scale = std::max(1.0, m.frobenius_norm());
  const int max_sweeps = 60;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(m(p, q));
    if (std::sqrt(off) < 1e-14 * scale) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = m(p, q);
        const double abs_apq = std::abs(apq);
        if (abs_apq < 1e-300) continue;
        const Complex phase = apq / abs_apq;
        const double app = m(p, p).real();
        const double aqq = m(q, q).real();
        // rotation angle from tan(2 theta) = 2 |a_pq| / (a_pp - a_qq)
        const double diff = app - aqq;
        double t;  // tan(theta), smaller root for stability
        if (std::abs(diff) < 1e-300 * abs_apq) {
          t = 1.0;
        } else {
          const double zeta = diff / (2.0 * abs_apq);
          t = ((zeta >= 0) ? 1.0 : -1.0) /
              (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex sp = s * phase;         // applied to column p
        const Complex spc = std::conj(sp);

        // A <- G^H A G on rows/columns p, q
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = m(k, p), akq = m(k, q);
          m(k, p) = c * akp + spc * akq;
          m(k, q) = -sp * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = m(p, k), aqk = m(q, k);
          m(p, k) = c * apk + sp * aqk;
          m(q, k) = -spc * apk + c * aqk;
        }
        m(p, q) = 0.0;
        m(q, p) = 0.0;
        m(p, p) = Complex(m(p, p).real(), 0.0);
        m(q, q) = Complex(m(q, q).real(), 0.0);
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp + spc * vkq;
          v[k][q] = -sp * vkp + c * vkq;
        }
      }
    }
  }

  EigenDecomposition out;
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return m(i, i).real() < m(j, j).real();
  });
  out.values.resize(n);
  out.vectors.assign(n, std::vector<Complex>(n));
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = m(order[k], order[k]).real();
    for (std::size_t row = 0; row < n; ++row) out.vectors[k][row] = v[row][order[k]];
  }
  return out;
}

// Residual ||A v - lambda v||_2 for a computed pair.
inline double eigen_residual(const HermitianMatrix& a, const std::vector<Complex>& vec,
                             double lambda) {
  const std::size_t n = a.n;
  double s = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Complex acc = 0;
    for (std::size_t j = 0; j < n; ++j) acc += a(i, j) * vec[j];
    s += std::norm(acc - lambda * vec[i]);
  }
  return std::sqrt(s);
}

}  // namespace torlab
