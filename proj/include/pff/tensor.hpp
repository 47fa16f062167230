#pragma once

#include <array>
#include <cmath>

namespace pff {

/// Symmetric second-order tensor in 3D.
///
/// Axisymmetric states are promoted to this type by placing the hoop
/// strain on the diagonal, so the same machinery serves 1D, axisymmetric
/// and general 3D stress/strain states.
struct Sym3 {
  double xx = 0.0;
  double yy = 0.0;
  double zz = 0.0;
  double xy = 0.0;
  double yz = 0.0;
  double xz = 0.0;

  static Sym3 diag(double a, double b, double c) { return {a, b, c, 0.0, 0.0, 0.0}; }

  static Sym3 identity() { return diag(1.0, 1.0, 1.0); }

  double trace() const { return xx + yy + zz; }

  /// Deviatoric part.
  Sym3 dev() const {
    const double p = trace() / 3.0;
    return {xx - p, yy - p, zz - p, xy, yz, xz};
  }

  /// Full double contraction a:a (off-diagonals counted twice).
  double norm2() const {
    return xx * xx + yy * yy + zz * zz + 2.0 * (xy * xy + yz * yz + xz * xz);
  }

  Sym3 operator*(double s) const { return {xx * s, yy * s, zz * s, xy * s, yz * s, xz * s}; }

  Sym3 operator+(const Sym3& o) const {
    return {xx + o.xx, yy + o.yy, zz + o.zz, xy + o.xy, yz + o.yz, xz + o.xz};
  }

  bool finite() const {
    return std::isfinite(xx) && std::isfinite(yy) && std::isfinite(zz) &&
           std::isfinite(xy) && std::isfinite(yz) && std::isfinite(xz);
  }
};

inline double double_dot(const Sym3& a, const Sym3& b) {
  return a.xx * b.xx + a.yy * b.yy + a.zz * b.zz +
         2.0 * (a.xy * b.xy + a.yz * b.yz + a.xz * b.xz);
}

/// Eigenvalues of a symmetric 3x3 tensor by cyclic Jacobi iteration.
/// Unordered. Degenerate eigenvalues are resolved to within
/// ~1e-14 * ||a||; only their signs matter for the energy splits, so the
/// arbitrary basis of a degenerate subspace does not affect results.
std::array<double, 3> principal_values(const Sym3& a);

inline double macaulay_pos(double x) { return x > 0.0 ? x : 0.0; }
inline double macaulay_neg(double x) { return x < 0.0 ? x : 0.0; }

}  // namespace pff
