#pragma once

// Curved model hypersurfaces in the unit torus (circle/ellipse in d=2,
// sphere/ellipsoid in d=3) and the Fourier transform of their normalized
// surface measure,
//
//   sigma_hat(xi) = integral over Sigma of e(-xi . x) dsigma(x),
//   e(z) = exp(2 pi i z),  sigma(Sigma) = 1.
//
// Three evaluation routes: oscillation-resolving quadrature, closed forms
// (J0 for the circle, sinc for the sphere), and the two-point stationary
// phase leading term.  Plus curvature ranges, support functions, and decay
// profiling of |sigma_hat(xi)| |xi|^{(d-1)/2}.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "torlab/bessel.hpp"

namespace torlab {

using Complex = std::complex<double>;

inline Complex unit_phase(double z) {
  const double t = 2 * std::numbers::pi * z;
  return {std::cos(t), std::sin(t)};
}

enum class SurfaceKind { circle, ellipse, sphere, ellipsoid };

enum class FourierMethod { quadrature, closed_form, asymptotic };

struct FourierSample {
  std::vector<double> xi;
  Complex value;
  FourierMethod method = FourierMethod::quadrature;
  double err_estimate = 0;
};

class Hypersurface {
 public:
  static Hypersurface circle(double rho, std::array<double, 2> center = {0.5, 0.5}) {
    return checked(SurfaceKind::circle, 2, {rho, rho, 0}, {center[0], center[1], 0});
  }
  static Hypersurface ellipse(double a, double b,
                              std::array<double, 2> center = {0.5, 0.5}) {
    return checked(SurfaceKind::ellipse, 2, {a, b, 0}, {center[0], center[1], 0});
  }
  static Hypersurface sphere(double rho,
                             std::array<double, 3> center = {0.5, 0.5, 0.5}) {
    return checked(SurfaceKind::sphere, 3, {rho, rho, rho},
                   {center[0], center[1], center[2]});
  }
  static Hypersurface ellipsoid(double a, double b, double c,
                                std::array<double, 3> center = {0.5, 0.5, 0.5}) {
    return checked(SurfaceKind::ellipsoid, 3, {a, b, c},
                   {center[0], center[1], center[2]});
  }

  // Bypasses the fits-in-fundamental-domain check (unit sphere at the origin
  // and the like); the semi-axis positivity check still applies.
  static Hypersurface unchecked(SurfaceKind kind, int d,
                                std::array<double, 3> axes,
                                std::array<double, 3> center) {
    Hypersurface s(kind, d, axes, center);
    s.validate_axes();
    return s;
  }

  SurfaceKind kind() const { return kind_; }
  int dim() const { return d_; }
  const std::array<double, 3>& semi_axes() const { return axes_; }
  const std::array<double, 3>& center() const { return center_; }
  double max_axis() const {
    return std::max({axes_[0], axes_[1], d_ == 3 ? axes_[2] : 0.0});
  }
  double min_axis() const {
    double m = std::min(axes_[0], axes_[1]);
    if (d_ == 3) m = std::min(m, axes_[2]);
    return m;
  }
  double diameter() const { return 2 * max_axis(); }
  bool is_round() const {
    return kind_ == SurfaceKind::circle || kind_ == SurfaceKind::sphere;
  }

  // total arc length (d=2) / area (d=3); exact for the round kinds, cached
  // quadrature for the others
  double total_measure() const;

  std::string describe() const;

 private:
  Hypersurface(SurfaceKind kind, int d, std::array<double, 3> axes,
               std::array<double, 3> center)
      : kind_(kind), d_(d), axes_(axes), center_(center) {}

  static Hypersurface checked(SurfaceKind kind, int d, std::array<double, 3> axes,
                              std::array<double, 3> center) {
    Hypersurface s(kind, d, axes, center);
    s.validate_axes();
    for (int i = 0; i < d; ++i) {
      if (center[i] - s.max_axis() <= 0 || center[i] + s.max_axis() >= 1)
        throw std::invalid_argument(
            "Hypersurface: surface must fit strictly inside the fundamental domain");
    }
    return s;
  }

  void validate_axes() const {
    const int naxes = (d_ == 2) ? 2 : 3;
    for (int i = 0; i < naxes; ++i)
      if (!(axes_[i] > 0))
        throw std::invalid_argument("Hypersurface: semi-axes must be positive");
  }

  SurfaceKind kind_;
  int d_;
  std::array<double, 3> axes_;    // (a, b[, c]); equal for circle/sphere
  std::array<double, 3> center_;
  mutable double cached_measure_ = -1;
};

// ---------------------------------------------------------------------------
// curvature

// (kappa_min, kappa_max) of the signed curvature magnitude (d=2) or the
// Gauss curvature (d=3), in closed form.  Ellipse: extremes b/a^2, a/b^2 at
// the axis endpoints; ellipsoid: extremes of (abc)^2 / (product over the
// curvature formula), attained at the axis endpoints as well.
inline std::pair<double, double> curvature_range(const Hypersurface& s) {
  const auto& ax = s.semi_axes();
  std::pair<double, double> out;
  if (s.dim() == 2) {
    const double a = ax[0], b = ax[1];
    // curvature at (a,0) is a/b^2, at (0,b) is b/a^2
    out = std::minmax(a / (b * b), b / (a * a));
  } else {
    const double a = ax[0], b = ax[1], c = ax[2];
    // Gauss curvature at an axis endpoint along axis i is (a_i / (a_j a_k))^2
    const double ka = (a / (b * c)) * (a / (b * c));
    const double kb = (b / (a * c)) * (b / (a * c));
    const double kc = (c / (a * b)) * (c / (a * b));
    out = {std::min({ka, kb, kc}), std::max({ka, kb, kc})};
  }
  if (!(out.first > 0))
    throw std::domain_error("curvature_range: non-positive curvature");
  return out;
}

// ---------------------------------------------------------------------------
// support function

// h(xi) = max over x in Sigma of xi . x.  Closed form for centered quadrics:
// xi . x0 + |A xi| with A = diag(semi-axes).
inline double support_function(const Hypersurface& s, const std::vector<double>& xi) {
  double norm2 = 0;
  for (double v : xi) norm2 += v * v;
  if (norm2 == 0) throw std::invalid_argument("support_function: xi must be nonzero");
  const auto& ax = s.semi_axes();
  const auto& x0 = s.center();
  double dot = 0, scaled2 = 0;
  for (int i = 0; i < s.dim(); ++i) {
    dot += xi[i] * x0[i];
    scaled2 += (ax[i] * xi[i]) * (ax[i] * xi[i]);
  }
  return dot + std::sqrt(scaled2);
}

// ---------------------------------------------------------------------------
// quadrature detail

namespace detail {

// 16-point Gauss-Legendre rule on [-1, 1].
inline constexpr std::array<double, 8> gl16_x = {
    0.09501250983763744, 0.28160355077925891, 0.45801677765722739,
    0.61787624440264375, 0.75540440835500303, 0.86563120238783174,
    0.94457502307323258, 0.98940093499164993};
inline constexpr std::array<double, 8> gl16_w = {
    0.18945061045506850, 0.18260341504492359, 0.16915651939500254,
    0.14959598881657673, 0.12462897125553387, 0.09515851168249278,
    0.06225352393864789, 0.02715245941175409};

struct QuadResult {
  Complex value;
  double err = 0;
  bool converged = false;
};

// Periodic trapezoid for the curve integral
//   integral_0^1 speed(t) e(-xi . x(t)) dt  (unnormalized by arc length).
template <typename F>
Complex periodic_trapezoid(int n, F&& integrand) {
  Complex sum = 0;
  Complex comp = 0;  // Kahan compensation, fixed-order summation
  for (int i = 0; i < n; ++i) {
    const Complex term = integrand((i + 0.5) / n);
    const Complex y = term - comp;
    const Complex t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum / static_cast<double>(n);
}

// Composite 16-point Gauss-Legendre over [lo, hi] with the given panel count.
template <typename F>
Complex composite_gl(double lo, double hi, int panels, F&& integrand) {
  const double h = (hi - lo) / panels;
  Complex sum = 0;
  for (int p = 0; p < panels; ++p) {
    const double mid = lo + (p + 0.5) * h;
    Complex local = 0;
    for (int k = 0; k < 8; ++k) {
      const double dx = 0.5 * h * gl16_x[k];
      local += gl16_w[k] * (integrand(mid + dx) + integrand(mid - dx));
    }
    sum += local * (0.5 * h);
  }
  return sum;
}

}  // namespace detail

inline double Hypersurface::total_measure() const {
  if (cached_measure_ >= 0) return cached_measure_;
  const double a = axes_[0], b = axes_[1], c = axes_[2];
  if (kind_ == SurfaceKind::circle) {
    cached_measure_ = 2 * std::numbers::pi * a;
  } else if (kind_ == SurfaceKind::sphere) {
    cached_measure_ = 4 * std::numbers::pi * a * a;
  } else if (kind_ == SurfaceKind::ellipse) {
    const double two_pi = 2 * std::numbers::pi;
    auto speed = [&](double t) -> Complex {
      const double s = std::sin(two_pi * t), co = std::cos(two_pi * t);
      return two_pi * std::sqrt(a * a * s * s + b * b * co * co);
    };
    int n = 256;
    Complex prev = detail::periodic_trapezoid(n, speed);
    for (int iter = 0; iter < 12; ++iter) {
      n *= 2;
      const Complex cur = detail::periodic_trapezoid(n, speed);
      if (std::abs(cur - prev) < 1e-13 * std::abs(cur)) { prev = cur; break; }
      prev = cur;
    }
    cached_measure_ = prev.real();
  } else {
    // ellipsoid: integrate the area element via the unit-sphere substitution
    // x = x0 + A u,  dS_Sigma = abc |A^{-1} u| dS(u)
    auto weight_slice = [&](double t) -> Complex {
      const double s = std::sqrt(std::max(0.0, 1 - t * t));
      // trapezoid in the azimuth (periodic, smooth)
      const int nphi = 64;
      double acc = 0;
      for (int i = 0; i < nphi; ++i) {
        const double phi = 2 * std::numbers::pi * (i + 0.5) / nphi;
        const double u0 = s * std::cos(phi), u1 = s * std::sin(phi);
        acc += std::sqrt(u0 * u0 / (a * a) + u1 * u1 / (b * b) + t * t / (c * c));
      }
      return acc * (2 * std::numbers::pi / nphi) * (a * b * c);
    };
    int panels = 8;
    Complex prev = detail::composite_gl(-1.0, 1.0, panels, weight_slice);
    for (int iter = 0; iter < 8; ++iter) {
      panels *= 2;
      const Complex cur = detail::composite_gl(-1.0, 1.0, panels, weight_slice);
      if (std::abs(cur - prev) < 1e-13 * std::abs(cur)) { prev = cur; break; }
      prev = cur;
    }
    cached_measure_ = prev.real();
  }
  return cached_measure_;
}

inline std::string Hypersurface::describe() const {
  switch (kind_) {
    case SurfaceKind::circle: return "circle(rho=" + std::to_string(axes_[0]) + ")";
    case SurfaceKind::ellipse:
      return "ellipse(a=" + std::to_string(axes_[0]) + ",b=" + std::to_string(axes_[1]) + ")";
    case SurfaceKind::sphere: return "sphere(rho=" + std::to_string(axes_[0]) + ")";
    case SurfaceKind::ellipsoid:
      return "ellipsoid(a=" + std::to_string(axes_[0]) + ",b=" + std::to_string(axes_[1]) +
             ",c=" + std::to_string(axes_[2]) + ")";
  }
  return "?";
}

namespace detail {

// d=2: normalized arc-length Fourier integral by periodic trapezoid with
// node doubling.  Node count scales with the oscillation |A xi|.
inline QuadResult sigma_hat_curve(const Hypersurface& s, const std::vector<double>& xi,
                                  double tol, int max_nodes) {
  const double a = s.semi_axes()[0], b = s.semi_axes()[1];
  const double cx = s.center()[0], cy = s.center()[1];
  const double two_pi = 2 * std::numbers::pi;
  const double osc = std::hypot(a * xi[0], b * xi[1]);
  const double length = s.total_measure();
  auto integrand = [&](double t) -> Complex {
    const double co = std::cos(two_pi * t), si = std::sin(two_pi * t);
    const double x = cx + a * co, y = cy + b * si;
    const double speed = two_pi * std::hypot(a * si, b * co);
    return speed * unit_phase(-(xi[0] * x + xi[1] * y));
  };
  int n = std::max(64, 16 * (1 + static_cast<int>(std::ceil(2 * osc))));
  Complex prev = periodic_trapezoid(n, integrand);
  QuadResult out;
  while (2 * n <= max_nodes) {
    n *= 2;
    const Complex cur = periodic_trapezoid(n, integrand);
    out.err = std::abs(cur - prev) / length;
    out.value = cur / length;
    prev = cur;
    if (out.err <= tol) { out.converged = true; return out; }
  }
  return out;
}

// Orthonormal frame (e1, e2, e3) with e3 = dir.
inline std::array<std::array<double, 3>, 3> frame_from(const std::array<double, 3>& dir) {
  std::array<double, 3> e3 = dir;
  std::array<double, 3> up = (std::abs(e3[0]) < 0.9) ? std::array<double, 3>{1, 0, 0}
                                                     : std::array<double, 3>{0, 1, 0};
  std::array<double, 3> e1{up[1] * e3[2] - up[2] * e3[1],
                           up[2] * e3[0] - up[0] * e3[2],
                           up[0] * e3[1] - up[1] * e3[0]};
  const double n1 = std::sqrt(e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]);
  for (auto& v : e1) v /= n1;
  std::array<double, 3> e2{e3[1] * e1[2] - e3[2] * e1[1],
                           e3[2] * e1[0] - e3[0] * e1[2],
                           e3[0] * e1[1] - e3[1] * e1[0]};
  return {e1, e2, e3};
}

// d=3: unit-sphere substitution x = x0 + A u moves all oscillation into the
// polar angle about eta = A xi:
//   sigma_hat = e(-xi.x0) / S * integral_{S^2} w(u) e(-eta.u) dS(u),
//   w(u) = abc |A^{-1} u|.
// Product rule: composite GL in the polar angle (resolves |eta| oscillations),
// periodic trapezoid in the azimuth (weight is smooth, non-oscillatory).
inline QuadResult sigma_hat_surface3(const Hypersurface& s, const std::vector<double>& xi,
                                     double tol, long max_nodes) {
  const double a = s.semi_axes()[0], b = s.semi_axes()[1], c = s.semi_axes()[2];
  std::array<double, 3> eta{a * xi[0], b * xi[1], c * xi[2]};
  double eta_norm = std::sqrt(eta[0] * eta[0] + eta[1] * eta[1] + eta[2] * eta[2]);
  std::array<std::array<double, 3>, 3> fr;
  if (eta_norm > 0) {
    std::array<double, 3> dir{eta[0] / eta_norm, eta[1] / eta_norm, eta[2] / eta_norm};
    fr = frame_from(dir);
  } else {
    fr = {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  }
  const double area = s.total_measure();
  const double pi = std::numbers::pi;

  auto evaluate = [&](int panels, int nphi) -> Complex {
    Complex total = 0;
    auto slice = [&](double theta) -> Complex {
      const double st = std::sin(theta), ct = std::cos(theta);
      // phase is constant on the slice: eta.u = |eta| cos(theta)
      const Complex phase = unit_phase(-eta_norm * ct);
      double wsum = 0;
      for (int i = 0; i < nphi; ++i) {
        const double phi = 2 * pi * (i + 0.5) / nphi;
        const double cp = std::cos(phi), sp = std::sin(phi);
        std::array<double, 3> u;
        for (int k = 0; k < 3; ++k)
          u[k] = st * cp * fr[0][k] + st * sp * fr[1][k] + ct * fr[2][k];
        wsum += std::sqrt(u[0] * u[0] / (a * a) + u[1] * u[1] / (b * b) +
                          u[2] * u[2] / (c * c));
      }
      return st * phase * (wsum * (2 * pi / nphi) * (a * b * c));
    };
    total = composite_gl(0.0, pi, panels, slice);
    return total / area;
  };

  int panels = std::max(4, static_cast<int>(std::ceil(eta_norm)));
  int nphi = 32;
  Complex prev = evaluate(panels, nphi);
  QuadResult out;
  while (static_cast<long>(panels) * 2 * 16 * nphi * 2 <= max_nodes) {
    panels *= 2;
    nphi *= 2;
    const Complex cur = evaluate(panels, nphi);
    out.err = std::abs(cur - prev);
    out.value = cur;
    prev = cur;
    if (out.err <= tol) { out.converged = true; break; }
  }
  if (!out.converged) return out;
  out.value *= unit_phase(-(xi[0] * s.center()[0] + xi[1] * s.center()[1] +
                            xi[2] * s.center()[2]));
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// sigma_hat

// Oscillation-resolving quadrature with node-doubling error control.
inline FourierSample sigma_hat(const Hypersurface& s, const std::vector<double>& xi,
                               double tol = 1e-8) {
  if (!(tol > 0)) throw std::invalid_argument("sigma_hat: tol must be positive");
  if (static_cast<int>(xi.size()) != s.dim())
    throw std::invalid_argument("sigma_hat: xi dimension mismatch");
  FourierSample out;
  out.xi = xi;
  out.method = FourierMethod::quadrature;
  bool zero = true;
  for (double v : xi) zero = zero && v == 0;
  if (zero) {  // sigma_hat(0) = 1 exactly, normalized measure
    out.value = 1.0;
    out.err_estimate = 0;
    return out;
  }
  detail::QuadResult q;
  if (s.dim() == 2) {
    q = detail::sigma_hat_curve(s, xi, tol, 1 << 24);
  } else {
    q = detail::sigma_hat_surface3(s, xi, tol, 1L << 28);
  }
  if (!q.converged)
    throw std::runtime_error("sigma_hat: quadrature failed to reach tol " +
                             std::to_string(tol) + " within the node budget");
  out.value = q.value;
  out.err_estimate = q.err;
  return out;
}

// Closed forms: circle -> e(-xi.x0) J0(2 pi rho |xi|),
//               sphere -> e(-xi.x0) sinc(2 pi rho |xi|).
inline FourierSample sigma_hat_closed_form(const Hypersurface& s,
                                           const std::vector<double>& xi) {
  if (!s.is_round())
    throw std::invalid_argument("sigma_hat_closed_form: circle and sphere only");
  if (static_cast<int>(xi.size()) != s.dim())
    throw std::invalid_argument("sigma_hat_closed_form: xi dimension mismatch");
  const double rho = s.semi_axes()[0];
  double norm2 = 0, dot = 0;
  for (int i = 0; i < s.dim(); ++i) {
    norm2 += xi[i] * xi[i];
    dot += xi[i] * s.center()[i];
  }
  const double arg = 2 * std::numbers::pi * rho * std::sqrt(norm2);
  double radial;
  if (s.dim() == 2) {
    radial = bessel_j0(arg);
  } else {
    radial = (arg == 0) ? 1.0 : std::sin(arg) / arg;
  }
  FourierSample out;
  out.xi = xi;
  out.method = FourierMethod::closed_form;
  out.value = unit_phase(-dot) * radial;
  out.err_estimate = 1e-10;
  return out;
}

// Two-point stationary phase leading term:
//   sigma_hat(xi) ~ (1/S) |xi|^{-(d-1)/2} sum over the two points x_pm with
//   outward normal pm xi/|xi| of  kappa(x_pm)^{-1/2} e(-xi.x_pm pm (d-1)/8),
// where kappa is the curvature (d=2) or Gauss curvature (d=3) and S the
// total measure.  The pm (d-1)/8 phase (Hessian signature at the support
// max/min) is validated against the J0 and sinc closed forms in the tests.
inline FourierSample sigma_hat_asymptotic(const Hypersurface& s,
                                          const std::vector<double>& xi,
                                          double threshold_scale = 10.0) {
  if (static_cast<int>(xi.size()) != s.dim())
    throw std::invalid_argument("sigma_hat_asymptotic: xi dimension mismatch");
  double norm2 = 0;
  for (double v : xi) norm2 += v * v;
  const double norm = std::sqrt(norm2);
  const double threshold = threshold_scale / s.min_axis();
  if (norm < threshold)
    throw std::invalid_argument("sigma_hat_asymptotic: |xi| below threshold " +
                                std::to_string(threshold));
  const auto& ax = s.semi_axes();
  const auto& x0 = s.center();
  const int d = s.dim();
  // stationary points x_pm = x0 pm A^2 xi / |A xi|
  double scaled2 = 0;
  for (int i = 0; i < d; ++i) scaled2 += (ax[i] * xi[i]) * (ax[i] * xi[i]);
  const double axi = std::sqrt(scaled2);
  double dot0 = 0;
  for (int i = 0; i < d; ++i) dot0 += xi[i] * x0[i];
  // xi . x_pm = xi . x0 pm |A xi|
  // curvature at the stationary points, closed form:
  //   d=2: kappa^{-1/2} = a b (|xi|/|A xi|)^{3/2}
  //   d=3: K^{-1/2}     = a b c |xi|^2 / |A xi|^2
  double amp;
  if (d == 2) {
    amp = ax[0] * ax[1] * std::pow(norm / axi, 1.5);
  } else {
    amp = ax[0] * ax[1] * ax[2] * norm2 / scaled2;
  }
  const double scale = amp / (s.total_measure() * std::pow(norm, 0.5 * (d - 1)));
  const double eighth = (d - 1) / 8.0;
  const Complex value = scale * (unit_phase(-(dot0 + axi) + eighth) +
                                 unit_phase(-(dot0 - axi) - eighth));
  FourierSample out;
  out.xi = xi;
  out.method = FourierMethod::asymptotic;
  out.value = value;
  // next-order correction is down by ~ 1/(kappa_min |A xi|)
  out.err_estimate = 2 * scale / std::max(1.0, curvature_range(s).first * axi);
  return out;
}

// Dispatcher: closed form for the round kinds, quadrature otherwise.
inline FourierSample sigma_hat_auto(const Hypersurface& s, const std::vector<double>& xi,
                                    double tol = 1e-8) {
  if (s.is_round()) return sigma_hat_closed_form(s, xi);
  return sigma_hat(s, xi, tol);
}

// ---------------------------------------------------------------------------
// decay profile

struct DecayBlock {
  double block_lo = 0;
  double block_hi = 0;
  double sup_normalized = 0;  // max of |sigma_hat(xi)| |xi|^{(d-1)/2}
};

// Sample each dyadic block [R, 2R] in directions x radii and record the
// maximum of |sigma_hat| |xi|^{(d-1)/2}.  Directions are a fixed uniform
// fan (d=2) or a Fibonacci sphere (d=3); deterministic.
inline std::vector<DecayBlock> decay_profile(const Hypersurface& s, double r_min,
                                             double r_max, int samples_per_block,
                                             double tol = 1e-8) {
  if (!(r_min >= 1) || !(r_min < r_max))
    throw std::invalid_argument("decay_profile: need 1 <= R_min < R_max");
  if (samples_per_block < 1)
    throw std::invalid_argument("decay_profile: samples_per_block must be positive");
  const int d = s.dim();
  const int ndir = (d == 2) ? 32 : 64;
  std::vector<std::vector<double>> dirs;
  if (d == 2) {
    for (int i = 0; i < ndir; ++i) {
      const double a = 2 * std::numbers::pi * i / ndir + 0.05;
      dirs.push_back({std::cos(a), std::sin(a)});
    }
  } else {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < ndir; ++i) {
      const double z = 1.0 - (2.0 * i + 1.0) / ndir;
      const double r = std::sqrt(std::max(0.0, 1 - z * z));
      dirs.push_back({r * std::cos(golden * i), r * std::sin(golden * i), z});
    }
  }
  std::vector<DecayBlock> blocks;
  for (double lo = r_min; lo < r_max; lo *= 2) {
    DecayBlock blk;
    blk.block_lo = lo;
    blk.block_hi = std::min(2 * lo, r_max);
    for (int k = 0; k < samples_per_block; ++k) {
      const double radius =
          blk.block_lo + (blk.block_hi - blk.block_lo) * (k + 0.5) / samples_per_block;
      for (const auto& dir : dirs) {
        std::vector<double> xi(d);
        for (int i = 0; i < d; ++i) xi[i] = radius * dir[i];
        const auto sample = sigma_hat_auto(s, xi, tol);
        const double normalized =
            std::abs(sample.value) * std::pow(radius, 0.5 * (d - 1));
        blk.sup_normalized = std::max(blk.sup_normalized, normalized);
      }
    }
    blocks.push_back(blk);
  }
  return blocks;
}

}  // namespace torlab
