#pragma once

#include <cmath>
#include <cstdlib>

namespace tiqs {

// J_m(x) for any integer order
inline double bessel_j(int m, double x) {
  if (m >= 0) return std::cyl_bessel_j(static_cast<double>(m), x);
  double v = std::cyl_bessel_j(static_cast<double>(-m), x);
  return (m % 2 == 0) ? v : -v;
}

// smallest M >= |x| with sum_{|m|>M} J_m(x)^2 below tol
inline int bessel_cutoff(double x, double tol = 1e-12) {
  int M = static_cast<int>(std::ceil(std::abs(x)));
  for (;; ++M) {
    double a = bessel_j(M + 1, x);
    double b = bessel_j(M + 2, x);
    // terms beyond |x| fall faster than geometrically with ratio b/a < 1
    double ratio = (a != 0.0) ? std::abs(b / a) : 0.0;
    if (ratio >= 1.0) continue;
    double tail = 2.0 * a * a / (1.0 - ratio * ratio);
    if (tail < tol) return M;
    if (M > 10000) return M;
  }
}

}  // namespace tiqs
