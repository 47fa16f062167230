#include "pff/material.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pff {

namespace {

constexpr double kPhiTol = 1e-12;

void check_phi(double phi) {
  if (phi < -kPhiTol || phi > 1.0 + kPhiTol)
    throw std::domain_error("phase field value outside [0,1]: " + std::to_string(phi));
}

double clamp01(double phi) { return phi < 0.0 ? 0.0 : (phi > 1.0 ? 1.0 : phi); }

/// Golden-section maximization of a unimodal function on [a, b].
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

}  // namespace

MaterialParams MaterialParams::make(double E, double nu, double Gc, double ell,
                                    double k_residual) {
  if (!(E > 0.0)) throw std::invalid_argument("MaterialParams.E: must be > 0");
  if (!(nu > -1.0 && nu < 0.5))
    throw std::invalid_argument("MaterialParams.nu: must satisfy -1 < nu < 0.5");
  if (!(Gc > 0.0)) throw std::invalid_argument("MaterialParams.Gc: must be > 0");
  if (!(ell > 0.0)) throw std::invalid_argument("MaterialParams.ell: must be > 0");
  if (!(k_residual >= 0.0))
    throw std::invalid_argument("MaterialParams.k_residual: must be >= 0");
  MaterialParams m;
  m.E = E;
  m.nu = nu;
  m.Gc = Gc;
  m.ell = ell;
  m.lambda = E * nu / ((1.0 + nu) * (1.0 - 2.0 * nu));
  m.mu = E / (2.0 * (1.0 + nu));
  m.k_residual = k_residual;
  return m;
}

double cw_constant(PfModel model) { return model == PfModel::AT1 ? 2.0 / 3.0 : 0.5; }

double degrade(double phi) {
  check_phi(phi);
  const double p = clamp01(phi);
  return (1.0 - p) * (1.0 - p);
}

double degrade_d1(double phi) {
  check_phi(phi);
  return -2.0 * (1.0 - clamp01(phi));
}

double degrade_d2(double) { return 2.0; }

GeomCrack geometric_crack(PfModel model, double phi) {
  check_phi(phi);
  const double p = clamp01(phi);
  if (model == PfModel::AT1) return {p, 1.0, 0.0};
  return {p * p, 2.0 * p, 2.0};
}

double undamaged_energy(const Sym3& eps, const MaterialParams& mat) {
  const double tr = eps.trace();
  return 0.5 * mat.lambda * tr * tr + mat.mu * eps.norm2();
}

EnergySplit split_energy(const Sym3& eps, const MaterialParams& mat, SplitKind kind) {
  if (!eps.finite())
    throw std::invalid_argument("split_energy: non-finite strain tensor");

  switch (kind) {
    case SplitKind::None: {
      return {undamaged_energy(eps, mat), 0.0};
    }
    case SplitKind::VolDev: {
      const double tr = eps.trace();
      const double K = mat.bulk();
      const double dev2 = eps.dev().norm2();
      const double tp = macaulay_pos(tr);
      const double tm = macaulay_neg(tr);
      return {0.5 * K * tp * tp + mat.mu * dev2, 0.5 * K * tm * tm};
    }
    case SplitKind::Spectral: {
      auto ev = principal_values(eps);
      // Degeneracy tolerance: eigenvalues within 1e-12 * ||eps|| of zero are
      // treated as zero so semidefinite states split exactly.
      const double tol = 1e-12 * std::sqrt(eps.norm2());
      for (double& e : ev)
        if (std::abs(e) <= tol) e = 0.0;
      const double tr = eps.trace();
      const double tp = macaulay_pos(tr);
      const double tm = macaulay_neg(tr);
      double sp = 0.0, sm = 0.0;
      for (double e : ev) {
        const double ep = macaulay_pos(e);
        const double em = macaulay_neg(e);
        sp += ep * ep;
        sm += em * em;
      }
      return {0.5 * mat.lambda * tp * tp + mat.mu * sp,
              0.5 * mat.lambda * tm * tm + mat.mu * sm};
    }
    case SplitKind::NoTension: {
      // Positive/negative-definite symmetric parts share the eigenbasis of
      // eps, so the two invariants reduce to sums over eigenvalues.
      auto ev = principal_values(eps);
      const double tol = 1e-12 * std::sqrt(eps.norm2());
      for (double& e : ev)
        if (std::abs(e) <= tol) e = 0.0;
      double trp = 0.0, trm = 0.0, sp = 0.0, sm = 0.0;
      for (double e : ev) {
        const double ep = macaulay_pos(e);
        const double em = macaulay_neg(e);
        trp += ep;
        trm += em;
        sp += ep * ep;
        sm += em * em;
      }
      return {0.5 * mat.lambda * trp * trp + mat.mu * sp,
              0.5 * mat.lambda * trm * trm + mat.mu * sm};
    }
  }
  throw std::invalid_argument("split_energy: unknown split kind");
}

Sym3 stress(const Sym3& eps, double phi, const MaterialParams& mat) {
  const double gk = degrade(phi) + mat.k_residual;
  const double lam_tr = mat.lambda * eps.trace();
  const double two_mu = 2.0 * mat.mu;
  return {gk * (lam_tr + two_mu * eps.xx), gk * (lam_tr + two_mu * eps.yy),
          gk * (lam_tr + two_mu * eps.zz), gk * two_mu * eps.xy,
          gk * two_mu * eps.yz,            gk * two_mu * eps.xz};
}

double history_threshold(const MaterialParams& mat) {
  return 3.0 * mat.Gc / (16.0 * mat.ell);
}

double update_history(double H_prev, double psi_plus, PfModel model,
                      const MaterialParams& mat) {
  double H = std::max(H_prev, psi_plus);
  if (model == PfModel::AT1) H = std::max(H, history_threshold(mat));
  return H;
}

double homogeneous_stress_1d(PfModel model, const MaterialParams& mat, double eps,
                             double f, double stiffness_floor) {
  const double psi = 0.5 * mat.E * eps * eps;
  double phi = 0.0;
  if (model == PfModel::AT1) {
    // Toughness degradation scales the elastic-stage driving floor, so a
    // fatigued point stays undamaged until psi exceeds f * 3Gc/(16 ell).
    const double Hmin = f * history_threshold(mat);
    const double H = std::max(psi, Hmin);
    phi = H > 0.0 ? clamp01(1.0 - f * history_threshold(mat) / H) : 0.0;
  } else {
    const double denom = 2.0 * mat.ell * psi + mat.Gc * f;
    phi = denom > 0.0 ? clamp01(2.0 * mat.ell * psi / denom) : (psi > 0.0 ? 1.0 : 0.0);
  }
  return (degrade(phi) + stiffness_floor) * mat.E * eps;
}

double at2_strength_closed_form(const MaterialParams& mat) {
  return (9.0 / 16.0) * std::sqrt(mat.E * mat.Gc / (3.0 * mat.ell));
}

CriticalPoint critical_point(PfModel model, const MaterialParams& mat) {
  if (model == PfModel::AT1) {
    return {std::sqrt(3.0 * mat.E * mat.Gc / (8.0 * mat.ell)),
            std::sqrt(3.0 * mat.Gc / (8.0 * mat.ell * mat.E))};
  }
  const double eps_c = std::sqrt(mat.Gc / (3.0 * mat.ell * mat.E));
  const auto response = [&](double e) {
    return homogeneous_stress_1d(PfModel::AT2, mat, e);
  };
  const double e_star = golden_max(response, 0.0, 4.0 * eps_c, 1e-13 * eps_c);
  return {response(e_star), eps_c};
}

}  // namespace pff
