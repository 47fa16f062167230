#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pff/fem/solver.hpp"
#include "pff/homogeneous.hpp"

namespace pff {

struct SNPoint {
  double amplitude = 0.0;  ///< applied sigma_a (or sigma_max in peak mode)
  double R = -1.0;
  std::uint64_t N_f = 0;   ///< runout points carry N_f = max_cycles
  bool runout = false;
  std::optional<std::uint64_t> N_i;
  std::string error;       ///< non-empty when the individual run failed
};

struct BasquinFit {
  double C_star = 0.0;   ///< intercept of sigma = C* N^{m*}
  double m_star = 0.0;   ///< slope exponent (negative)
  double m = 0.0;        ///< -1/m*
  double r_squared = 0.0;
  int points_used = 0;
};

/// Built-in material parameter sets. ell_at2 is zero when the set has no
/// AT2 calibration.
struct MaterialPreset {
  std::string name;
  double E, nu, Gc;
  double ell_at1, ell_at2;
  double sigma_e;
  double alpha0, n, kappa;

  MaterialParams material(PfModel model) const;
  double sigma_c(PfModel model) const;
};

const std::vector<MaterialPreset>& material_presets();
const MaterialPreset& preset_by_name(const std::string& name);

/// Meshed-specimen campaign ingredients. Load-controlled amplitudes are
/// net-section nominal stresses; traction_scale converts them to the applied
/// face traction (net-to-gross area ratio for the notched bars).
struct FemCampaignSpec {
  Mesh mesh;
  double traction_scale = 1.0;
  FemOptions options;
  FemFatigueOptions fatigue_options;
};

/// A grid of constant-amplitude runs sharing one constitutive setup,
/// solved semi-analytically or per-specimen with the meshed solver.
struct Campaign {
  std::string material_name = "custom";
  MaterialParams mat;
  PfModel model = PfModel::AT1;
  SplitKind split = SplitKind::NoTension;
  FatigueParams fp;
  ControlMode control = ControlMode::Load;
  bool amplitude_is_peak = false;
  std::vector<double> amplitudes;
  std::vector<double> ratios;
  std::uint64_t max_cycles = 10'000'000;
  int substeps_per_cycle = 1;
  int threads = 0;  ///< 0 = hardware concurrency
  HomogeneousOptions hopts{.record_trace = false};
  std::shared_ptr<const FemCampaignSpec> fem;  ///< null = homogeneous solver

  void validate() const;
};

/// One life computation per (amplitude, ratio) grid point. Points run
/// independently on a bounded worker pool; results are ordered by grid
/// position, so identical configurations produce identical output.
std::vector<SNPoint> sn_curve(const Campaign& campaign);

/// Least-squares fit of log10(sigma) against log10(N) over the non-runout,
/// non-failed points. Throws std::invalid_argument with fewer than 3 usable
/// points or degenerate data.
BasquinFit fit_basquin(const std::vector<SNPoint>& points);

struct SlopeSample {
  double n = 0.0;
  double m = 0.0;
  BasquinFit fit;
};

struct TableRegenerationOptions {
  std::vector<double> s_grid = {0.15, 0.175, 0.2, 0.225, 0.25, 0.3};
  double center_life = 1e4;   ///< alpha0 is set so the life at s = 0.2 hits this
  std::uint64_t max_cycles = 4'000'000;
  double fit_max_s = 0.7;     ///< linear-regime window: amplitudes above are excluded
  std::uint64_t fit_min_life = 100;
  int threads = 0;
};

struct TableCoefficients {
  double C1 = 0.0;
  double C2 = 0.0;
  std::vector<SlopeSample> samples;
};

/// Rebuilds the slope-exponent relation for one model/degradation pair:
/// virtual S-N curves for each n, a Basquin fit per curve, then a linear
/// regression of n against m. The amplitude grid is life-normalized per n
/// (the slope is insensitive to alpha0, which only shifts curves).
TableCoefficients regenerate_table1(PfModel model, FatigueDegradation fdeg,
                                    const std::vector<double>& n_grid,
                                    const TableRegenerationOptions& opts = {});

/// CSV with one row per grid point:
/// material,model,split,fdeg,n,kappa,alpha0,alpha_e,control,amplitude,R,N_i,N_f,runout
std::string sn_points_csv(const Campaign& campaign, const std::vector<SNPoint>& points);

std::string to_string(PfModel model);
std::string to_string(SplitKind split);
std::string to_string(FatigueDegradation fdeg);
std::string to_string(ControlMode control);
std::string to_string(AccumulationRule rule);

}  // namespace pff
