#pragma once

#include <cmath>

namespace pff::detail {

/// Golden-section maximization of a unimodal function on [a, b].
/// Returns the abscissa of the maximum to within tol.
template <class F>
double golden_max(F&& f, double a, double b, double tol) {
  constexpr double invphi = 0.6180339887498949;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

/// Illinois-damped regula falsi for f(x) = 0 on a bracket [lo, hi] with
/// f(lo) <= 0 <= f(hi). Converges to relative tolerance tol on x.
/// Returns false if the iteration cap is exhausted.
template <class F>
bool illinois_root(F&& f, double lo, double hi, double flo, double fhi, double tol,
                   int max_iter, double& root) {
  double side = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    const double denom = fhi - flo;
    double x = (denom != 0.0) ? (lo * fhi - hi * flo) / denom : 0.5 * (lo + hi);
    if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
    const double fx = f(x);
    if (fx <= 0.0) {
      lo = x;
      flo = fx;
      if (side == -1.0) fhi *= 0.5;
      side = -1.0;
    } else {
      hi = x;
      fhi = fx;
      if (side == 1.0) flo *= 0.5;
      side = 1.0;
    }
    if (hi - lo <= tol * std::max(std::abs(hi), 1e-300)) {
      root = 0.5 * (lo + hi);
      return true;
    }
  }
  root = 0.5 * (lo + hi);
  return false;
}

}  // namespace pff::detail
