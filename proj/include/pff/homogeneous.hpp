#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pff/fatigue.hpp"
#include "pff/material.hpp"

namespace pff {

enum class ControlMode { Load, Displacement };

/// Constant-amplitude proportional load program.
/// amplitude is (peak - valley)/2 unless amplitude_is_peak is set, in which
/// case it is the peak value directly. Units: stress (Load) or strain
/// (Displacement).
struct CycleLoad {
  ControlMode control = ControlMode::Load;
  double amplitude = 0.0;
  bool amplitude_is_peak = false;
  double R = -1.0;
  std::uint64_t max_cycles = 10'000'000;  ///< runout cap
  int substeps_per_cycle = 1;             ///< 1 = representative-load mode

  void validate() const;
  double peak_level() const;  ///< peak stress/strain implied by amplitude and R
};

struct CycleRecord {
  std::uint64_t cycle = 0;
  double alpha_bar = 0.0;
  double phi = 0.0;
  double sigma_peak = 0.0;
  double eps_peak = 0.0;
  double delta_alpha = 0.0;
};

struct LifeResult {
  std::optional<std::uint64_t> N_i;  ///< first cycle with phi above threshold
  std::optional<std::uint64_t> N_f;  ///< failure cycle
  bool runout = false;
  std::vector<CycleRecord> trace;    ///< per-cycle record, log-decimated above 1e4
  double final_alpha_bar = 0.0;
  double final_phi = 0.0;
  double final_history = 0.0;
};

struct HomogeneousOptions {
  double phi_init_threshold = 1e-3;  ///< crack-initiation proxy on phi
  double phi_fail = 0.95;            ///< displacement-control failure threshold
  bool record_trace = true;
  double eps_upper_factor = 10.0;    ///< root bracket ceiling, times eps_c
  double root_tol_rel = 1e-12;
};

/// Active/inactive energy of the uniaxial bar state. The bar is reduced to a
/// strictly 1D description (psi0 = 1/2 E eps^2); the split determines how a
/// compressive excursion contributes to the active part. Equivalent to
/// split_energy on diag(eps,0,0) with the lambda = 0, mu = E/2 reduction.
EnergySplit axial_split(double eps_axial, double E, SplitKind kind);

/// Pointwise phase field balance with toughness scaled by f, clamped to
/// [phi_prev, 1]. Closed forms:
///   AT1: phi = 1 - 3 Gc f / (16 ell H),  AT2: phi = 2 ell H / (2 ell H + Gc f).
double solve_phi_homogeneous(double H, double f, PfModel model,
                             const MaterialParams& mat, double phi_prev);

/// Cycle-by-cycle semi-analytical solution of the homogeneous bar under the
/// given load program. One phase field/equilibrium solve per cycle at the
/// representative (peak) load; the valley follows by proportionality with
/// the phase field frozen within the cycle.
LifeResult run_cycles(const CycleLoad& load, const MaterialParams& mat,
                      PfModel model, SplitKind split, const FatigueParams& fp,
                      const HomogeneousOptions& opts = {});

struct MonotonicCurve {
  std::vector<std::array<double, 2>> points;  ///< (eps, sigma)
  double peak_stress = 0.0;
  double peak_strain = 0.0;
};

/// Strain-driven monotonic envelope with the fatigue history frozen at
/// alpha_bar_start (a single reversal accumulates nothing). For AT1 with the
/// F2 function the peak scales as sigma_c sqrt(f).
MonotonicCurve monotonic_response(const MaterialParams& mat, PfModel model,
                                  SplitKind split, const FatigueParams& fp,
                                  double alpha_bar_start, int n_points = 400);

}  // namespace pff
