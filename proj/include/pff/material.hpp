#pragma once

#include "pff/tensor.hpp"

namespace pff {

/// Geometric crack function family: w(phi) = phi (AT1, elastic stage before
/// damage onset) or w(phi) = phi^2 (AT2, damage from the first load).
enum class PfModel { AT1, AT2 };

/// Strain energy decomposition driving the damage evolution. The stress
/// itself is always computed from the fully degraded isotropic stiffness
/// (hybrid formulation); the split only selects the active energy.
enum class SplitKind { Spectral, NoTension, VolDev, None };

/// Isotropic elasticity plus phase field fracture constants.
/// Unit convention throughout: N, mm, MPa; Gc in N/mm (1 kJ/m^2 = 1 N/mm).
struct MaterialParams {
  double E = 0.0;            ///< Young's modulus
  double nu = 0.0;           ///< Poisson ratio
  double Gc = 0.0;           ///< critical energy release rate
  double ell = 0.0;          ///< phase field length scale
  double lambda = 0.0;       ///< first Lame constant (derived)
  double mu = 0.0;           ///< shear modulus (derived)
  double k_residual = 1e-7;  ///< residual stiffness factor

  /// Validates ranges and fills the derived Lame constants.
  /// Throws std::invalid_argument naming the offending field.
  static MaterialParams make(double E, double nu, double Gc, double ell,
                             double k_residual = 1e-7);

  double bulk() const { return lambda + 2.0 * mu / 3.0; }
};

/// Scaling constant of the crack surface density: 2/3 for AT1, 1/2 for AT2.
double cw_constant(PfModel model);

/// Quadratic stiffness degradation g(phi) = (1 - phi)^2.
/// Throws std::domain_error if phi lies outside [0,1] by more than 1e-12.
double degrade(double phi);
double degrade_d1(double phi);  ///< g'(phi) = -2(1 - phi)
double degrade_d2(double phi);  ///< g''(phi) = 2

struct GeomCrack {
  double w;   ///< w(phi)
  double w1;  ///< w'(phi)
  double w2;  ///< w''(phi)
};

/// w(phi) and derivatives for the chosen model. Domain-checked like degrade().
GeomCrack geometric_crack(PfModel model, double phi);

struct EnergySplit {
  double plus = 0.0;   ///< active (tension-like) part
  double minus = 0.0;  ///< inactive (compression-like) part
};

/// Undamaged strain energy density 1/2 eps : L0 : eps.
double undamaged_energy(const Sym3& eps, const MaterialParams& mat);

/// Decomposes the undamaged strain energy density into active and inactive
/// parts. Spectral and VolDev partition the energy exactly; NoTension sums
/// to the total only when the positive and negative symmetric parts are
/// orthogonal. Kind None puts the full energy into the active part.
/// Throws std::invalid_argument on non-finite input.
EnergySplit split_energy(const Sym3& eps, const MaterialParams& mat, SplitKind kind);

/// Cauchy stress, hybrid formulation: sigma = [g(phi) + k] L0 : eps.
/// The full stiffness is degraded regardless of the split choice.
Sym3 stress(const Sym3& eps, double phi, const MaterialParams& mat);

/// Damage driving force floor for AT1 at full toughness: 3 Gc / (16 ell).
/// Below this level the pristine AT1 response stays purely elastic.
double history_threshold(const MaterialParams& mat);

/// History field update enforcing damage irreversibility:
/// AT2: max(H_prev, psi_plus); AT1: additionally floored at 3Gc/(16 ell).
double update_history(double H_prev, double psi_plus, PfModel model,
                      const MaterialParams& mat);

struct CriticalPoint {
  double sigma_c = 0.0;
  double eps_c = 0.0;
};

/// Critical strength and strain of the homogeneous 1D response
/// sigma(eps) = g(phi_hom(eps)) E eps.
/// AT1 uses the closed forms sigma_c = sqrt(3 E Gc / (8 ell)),
/// eps_c = sqrt(3 Gc / (8 ell E)). AT2 maximizes the response numerically;
/// the result equals (9/16) sqrt(E Gc / (3 ell)).
CriticalPoint critical_point(PfModel model, const MaterialParams& mat);

/// Closed-form AT2 strength, (9/16) sqrt(E Gc / (3 ell)).
double at2_strength_closed_form(const MaterialParams& mat);

/// Homogeneous 1D stress response at strain eps with the phase field at its
/// balance value and the toughness scaled by f. stiffness_floor is added to
/// g(phi) (pass mat.k_residual to include the residual stiffness).
double homogeneous_stress_1d(PfModel model, const MaterialParams& mat, double eps,
                             double f = 1.0, double stiffness_floor = 0.0);

}  // namespace pff
