#pragma once

// Bessel function of the first kind, order zero.
// |x| <= 12: power series sum (-1)^k (x^2/4)^k / (k!)^2.
// |x| >  12: Hankel asymptotic expansion
//   J0(x) ~ sqrt(2/(pi x)) (P(x) cos(x - pi/4) - Q(x) sin(x - pi/4)),
// truncated at the smallest term.  The two branches match to ~1e-10 at the
// switch point.

#include <cmath>
#include <numbers>

namespace torlab {

inline double bessel_j0(double x) {
  x = std::abs(x);
  if (x <= 12.0) {
    const double q = 0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 80; ++k) {
      term *= -q / (static_cast<double>(k) * k);
      sum += term;
      if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum))) break;
    }
    return sum;
  }
  // Hankel symbols A_k = prod_{j<=k} (2j-1)^2 / (k! 8^k):
  //   P =  1 - A_2/x^2 + A_4/x^4 - ...
  //   Q = -A_1/x + A_3/x^3 - A_5/x^5 + ...
  double p = 1.0, q = 0.0;
  double a = 1.0;  // A_k / x^k with alternating sign folded in below
  double prev = 1.0;
  for (int k = 1; k < 40; ++k) {
    const double f = (2.0 * k - 1.0);
    a *= f * f / (8.0 * k * x);
    if (a > prev) break;  // asymptotic series started diverging
    prev = a;
    const int m = k / 2;
    const double signed_term = ((m % 2) ? -a : a);
    if (k % 2) q -= signed_term; else p += signed_term;
    if (a < 1e-18) break;
  }
  const double chi = x - 0.25 * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * x)) *
         (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace torlab
