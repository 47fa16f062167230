#pragma once

#include <span>

#include "pff/material.hpp"

namespace pff {

/// Toughness degradation under cyclic exposure.
/// F0 keeps full toughness up to alpha0 and decays asymptotically beyond;
/// F1 decays asymptotically from the start; F2 vanishes at alpha0.
enum class FatigueDegradation { F0, F1, F2 };

/// How the per-cycle increment of the fatigue history variable is formed.
enum class AccumulationRule {
  GeneralizedOnePerCycle,  ///< amplitude power law + endurance gate + mean-stress factor
  LegacyPerIncrement,      ///< sum of positive increments of alpha within the cycle
  LegacyReformulated,      ///< closed per-cycle form (alpha_max^n - sgn(R) alpha_min^n)/alpha_n^n
  LegacyRepresentative     ///< one-increment form (alpha_max/alpha_n)^n (1 - sgn(R)|R|^{2n})
};

struct FatigueParams {
  double alpha0 = 1.0;   ///< fatigue susceptibility parameter
  double n = 1.0;        ///< power exponent controlling the S-N slope
  double kappa = 0.5;    ///< mean-stress sensitivity exponent in [0,1]
  double alpha_e = 0.0;  ///< endurance threshold (energy density)
  double alpha_n = 1.0;  ///< normalization (energy density)
  FatigueDegradation fdeg = FatigueDegradation::F2;
  AccumulationRule accumulation = AccumulationRule::GeneralizedOnePerCycle;

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

/// Default normalization 1/2 sigma_c eps_c from the homogeneous critical point.
double default_alpha_n(PfModel model, const MaterialParams& mat);

/// Endurance threshold from an endurance stress: sigma_e^2 / (2E).
double default_alpha_e(double sigma_e, const MaterialParams& mat);

/// Per-point fatigue history. peak_tracker latches the running maximum of
/// alpha_max ((1-R)/2)^{2 kappa} over all past cycles; once it exceeds
/// alpha_e the endurance gate stays open.
struct FatigueState {
  double alpha_bar = 0.0;
  double peak_tracker = 0.0;
};

/// Peak/valley of the fatigue driving variable within one cycle, plus the
/// stress ratio evaluated at the material point (equals the applied load
/// ratio under proportional loading).
struct CycleObservation {
  double alpha_max = 0.0;
  double alpha_min = 0.0;
  double R = -1.0;
};

/// f(alpha_bar) in [0,1], non-increasing.
double fatigue_degradation(FatigueDegradation fdeg, double alpha_bar, double alpha0);

/// Fatigue driving variable alpha = g(phi) psi_plus. The degraded energy
/// keeps the variable bounded near crack tips.
double fatigue_driving(double psi_plus, double phi);

/// Mean-stress factor ((1-R)/2)^kappa, valid for cycles with positive peak
/// stress. Throws std::domain_error for R > 1.
double walker_factor(double R, double kappa);

/// One-per-cycle accumulation with endurance gate and mean-stress effect.
FatigueState accumulate_generalized(const FatigueState& state,
                                    const CycleObservation& obs,
                                    const FatigueParams& p);

/// Sum of |d alpha| over loading (rising) sub-increments.
double accumulate_legacy_per_increment(std::span<const double> alpha_seq);

/// Per-cycle closed form of the per-increment rule; sgn(0) = 0, so R = 0
/// contributes no valley term.
double accumulate_legacy_reformulated(const CycleObservation& obs, double n,
                                      double alpha_n);

/// Representative-load acceleration of the reformulated rule.
double accumulate_legacy_representative(double alpha_max, double R, double n,
                                        double alpha_n);

/// Estimate alpha0 from one S-N point (AT1 + F2, quasi-elastic regime):
/// alpha0 = N (sigma/sigma_c)^{2n} / (1 - sigma/sigma_c).
/// Most accurate for low stress magnitudes. Throws std::domain_error unless
/// 0 < sigma/sigma_c < 1 and N_ref > 0.
double estimate_alpha0(double N_ref, double stress_ratio_sc, double n);

struct SlopeCoefficients {
  double C1 = 0.0;
  double C2 = 0.0;
};

/// Coefficients of the linear relation n = C1 m + C2 between the power
/// exponent and the S-N slope m = -1/m*.
SlopeCoefficients slope_coefficients(PfModel model, FatigueDegradation fdeg);

/// n = C1 m + C2 for the given model/degradation combination.
double slope_to_exponent(double m, PfModel model, FatigueDegradation fdeg);

}  // namespace pff
