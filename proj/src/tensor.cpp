#include "pff/tensor.hpp"

#include <algorithm>

namespace pff {

std::array<double, 3> principal_values(const Sym3& s) {
  double a[3][3] = {{s.xx, s.xy, s.xz}, {s.xy, s.yy, s.yz}, {s.xz, s.yz, s.zz}};

  const double scale = std::max({std::abs(s.xx), std::abs(s.yy), std::abs(s.zz),
                                 std::abs(s.xy), std::abs(s.yz), std::abs(s.xz)});
  if (scale == 0.0) return {0.0, 0.0, 0.0};

  // Cyclic Jacobi sweeps; 3x3 symmetric converges in a handful of sweeps.
  for (int sweep = 0; sweep < 64; ++sweep) {
    const double off = std::abs(a[0][1]) + std::abs(a[0][2]) + std::abs(a[1][2]);
    if (off <= 1e-15 * scale) break;
    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        const double apq = a[p][q];
        if (std::abs(apq) <= 1e-18 * scale) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;

        const double app = a[p][p], aqq = a[q][q];
        a[p][p] = c * c * app - 2.0 * sn * c * apq + sn * sn * aqq;
        a[q][q] = sn * sn * app + 2.0 * sn * c * apq + c * c * aqq;
        a[p][q] = a[q][p] = 0.0;
        const int r = 3 - p - q;  // remaining index
        const double arp = a[r][p], arq = a[r][q];
        a[r][p] = a[p][r] = c * arp - sn * arq;
        a[r][q] = a[q][r] = sn * arp + c * arq;
      }
    }
  }
  return {a[0][0], a[1][1], a[2][2]};
}

}  // namespace pff
