#include "pff/homogeneous.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pff/detail/scalar_solvers.hpp"

namespace pff {

void CycleLoad::validate() const {
  if (!(amplitude > 0.0))
    throw std::invalid_argument("CycleLoad.amplitude: must be > 0");
  if (!(R < 1.0)) throw std::invalid_argument("CycleLoad.R: must be < 1");
  if (max_cycles < 1)
    throw std::invalid_argument("CycleLoad.max_cycles: must be >= 1");
  if (substeps_per_cycle < 1)
    throw std::invalid_argument("CycleLoad.substeps_per_cycle: must be >= 1");
}

double CycleLoad::peak_level() const {
  return amplitude_is_peak ? amplitude : 2.0 * amplitude / (1.0 - R);
}

EnergySplit axial_split(double eps_axial, double E, SplitKind kind) {
  const double full = 0.5 * E * eps_axial * eps_axial;
  switch (kind) {
    case SplitKind::None:
      return {full, 0.0};
    case SplitKind::Spectral:
    case SplitKind::NoTension:
      return eps_axial >= 0.0 ? EnergySplit{full, 0.0} : EnergySplit{0.0, full};
    case SplitKind::VolDev:
      // lambda = 0 reduction: K = E/3 and mu = E/2, so a compressive bar
      // keeps the deviatoric 2/3 of its energy in the active part.
      if (eps_axial >= 0.0) return {full, 0.0};
      return {E * eps_axial * eps_axial / 3.0, E * eps_axial * eps_axial / 6.0};
  }
  throw std::invalid_argument("axial_split: unknown split kind");
}

double solve_phi_homogeneous(double H, double f, PfModel model,
                             const MaterialParams& mat, double phi_prev) {
  if (!(H >= 0.0))
    throw std::domain_error("solve_phi_homogeneous: H must be >= 0");
  if (!(phi_prev >= 0.0 && phi_prev <= 1.0))
    throw std::domain_error("solve_phi_homogeneous: phi_prev must lie in [0,1]");
  double raw = 0.0;
  if (model == PfModel::AT1) {
    if (H <= 0.0) return phi_prev;
    raw = (f <= 0.0) ? 1.0 : 1.0 - 3.0 * mat.Gc * f / (16.0 * mat.ell * H);
  } else {
    const double denom = 2.0 * mat.ell * H + mat.Gc * f;
    raw = denom > 0.0 ? 2.0 * mat.ell * H / denom : (H > 0.0 ? 1.0 : 0.0);
  }
  return std::min(1.0, std::max(phi_prev, raw));
}

namespace {

/// Equilibrium stress of the bar at a trial strain, with the phase field at
/// its balance value under the current fatigue state. Monotone rising up to
/// the (degraded) envelope maximum, then falling.
struct Envelope {
  const MaterialParams& mat;
  PfModel model;
  SplitKind split;
  double f;         // frozen toughness degradation for this cycle
  double H_raw;     // committed history (max of past active energies)
  double phi_prev;  // committed phase field
  double Hmin;      // AT1 driving floor at full toughness

  double phi_at(double e) const {
    const double psi = axial_split(e, mat.E, split).plus;
    double H = std::max(H_raw, psi);
    if (model == PfModel::AT1) H = std::max(H, f * Hmin);
    return solve_phi_homogeneous(H, f, model, mat, phi_prev);
  }
  double sigma_at(double e) const {
    return (degrade(phi_at(e)) + mat.k_residual) * mat.E * e;
  }
};

/// Smallest equilibrium strain with sigma(eps) = sigma_t (stable rising
/// branch). Returns false when the load cannot be sustained.
bool find_peak_strain(const Envelope& env, double sigma_t, double eps_warm,
                      double eps_up, double tol_rel, double& out) {
  auto residual = [&](double e) { return env.sigma_at(e) - sigma_t; };

  double lo = 0.0, flo = -sigma_t;
  double hi = eps_warm;
  if (!(hi > 0.0) || hi > eps_up)
    hi = std::min(sigma_t / ((1.0 + env.mat.k_residual) * env.mat.E), eps_up);
  double fhi = residual(hi);

  int guard = 0;
  while (fhi < 0.0 && hi < eps_up && guard++ < 400) {
    lo = hi;
    flo = fhi;
    hi = std::min(hi * 1.35, eps_up);
    fhi = residual(hi);
  }
  if (fhi < 0.0) {
    // No crossing found by expansion; decide against the envelope maximum.
    const double es = detail::golden_max(
        [&](double e) { return env.sigma_at(e); }, 0.0, eps_up, 1e-10 * eps_up);
    if (env.sigma_at(es) < sigma_t) return false;
    lo = 0.0;
    flo = -sigma_t;
    hi = es;
    fhi = residual(es);
    if (fhi < 0.0) return false;
  }
  return detail::illinois_root(residual, lo, hi, flo, fhi, tol_rel, 200, out);
}

/// Within-cycle strain path sampled at m sub-increments: start level to peak
/// in the first quarter, peak to valley over the middle half, valley back to
/// the mean. The first cycle ramps up from zero.
void sample_cycle_alpha(std::vector<double>& out, bool first_cycle, double eps_pk,
                        double R, double g, double E, SplitKind split, int m) {
  const double eps_v = R * eps_pk;
  const double eps_mean = 0.5 * (eps_pk + eps_v);
  const double start = first_cycle ? 0.0 : eps_mean;
  const int q = m / 4;
  out.clear();
  out.reserve(m + 1);
  auto alpha_at = [&](double e) { return g * axial_split(e, E, split).plus; };
  for (int j = 0; j <= m; ++j) {
    double e = 0.0;
    if (j <= q)
      e = start + (eps_pk - start) * double(j) / q;
    else if (j <= 3 * q)
      e = eps_pk + (eps_v - eps_pk) * double(j - q) / (2 * q);
    else
      e = eps_v + (eps_mean - eps_v) * double(j - 3 * q) / q;
    out.push_back(alpha_at(e));
  }
}

}  // namespace

LifeResult run_cycles(const CycleLoad& load, const MaterialParams& mat,
                      PfModel model, SplitKind split, const FatigueParams& fp,
                      const HomogeneousOptions& opts) {
  load.validate();
  fp.validate();

  const double E = mat.E;
  const double k = mat.k_residual;
  const double Hmin = history_threshold(mat);
  const auto cp = critical_point(model, mat);
  const double eps_up = opts.eps_upper_factor * cp.eps_c;
  const double peak_target = load.peak_level();

  // Sub-increment count rounded up to a multiple of 4 so peak and valley are
  // sampled exactly; only the per-increment rule walks the sampled path.
  const int m = std::max(4, ((load.substeps_per_cycle + 3) / 4) * 4);

  LifeResult res;
  double H_raw = 0.0;
  double phi = 0.0;
  FatigueState fs;
  double eps_warm = 0.0;
  std::vector<double> samples;

  std::uint64_t last_trace = 0;
  auto record = [&](std::uint64_t c, double dalpha, double sig, double eps) {
    if (!opts.record_trace) return;
    if (c <= 10000 || c >= last_trace + 1 + last_trace / 1000) {
      res.trace.push_back({c, fs.alpha_bar, phi, sig, eps, dalpha});
      last_trace = c;
    }
  };

  for (std::uint64_t cycle = 1; cycle <= load.max_cycles; ++cycle) {
    const double f = fatigue_degradation(fp.fdeg, fs.alpha_bar, fp.alpha0);

    double eps_pk = 0.0;
    if (load.control == ControlMode::Displacement) {
      eps_pk = peak_target;
    } else {
      bool solved = false;
      if (model == PfModel::AT1 && phi == 0.0) {
        // Elastic stage: no damage while the active energy stays below the
        // degraded driving floor.
        const double e_el = peak_target / ((1.0 + k) * E);
        const double psi_el = 0.5 * E * e_el * e_el;
        if (psi_el <= f * Hmin && H_raw <= f * Hmin) {
          eps_pk = e_el;
          solved = true;
        }
      }
      if (!solved) {
        const Envelope env{mat, model, split, f, H_raw, phi, Hmin};
        if (!find_peak_strain(env, peak_target, eps_warm, eps_up,
                              opts.root_tol_rel, eps_pk)) {
          // Load cannot be sustained. An elastic-stage bar fails without a
          // stable damaged state, so initiation coincides with failure.
          res.N_f = cycle;
          if (!res.N_i) res.N_i = cycle;
          record(cycle, 0.0, peak_target, eps_pk);
          break;
        }
      }
    }

    const double psi_pk = axial_split(eps_pk, E, split).plus;
    double H_used = std::max(H_raw, psi_pk);
    if (model == PfModel::AT1) H_used = std::max(H_used, f * Hmin);
    phi = solve_phi_homogeneous(H_used, f, model, mat, phi);
    H_raw = std::max(H_raw, psi_pk);
    eps_warm = eps_pk;

    if (!res.N_i && phi > opts.phi_init_threshold) res.N_i = cycle;

    if (load.control == ControlMode::Displacement && phi >= opts.phi_fail) {
      res.N_f = cycle;
      record(cycle, 0.0, (degrade(phi) + k) * E * eps_pk, eps_pk);
      break;
    }

    const double g = degrade(phi);
    const double sigma_pk = (g + k) * E * eps_pk;
    const double alpha_max = g * psi_pk;
    const double eps_v = load.R * eps_pk;
    const auto sv = axial_split(eps_v, E, split);
    const double alpha_min = g * sv.plus;
    H_raw = std::max(H_raw, sv.plus);

    // 1D proportional path: the point-level stress ratio equals the applied
    // one whenever the peak stress is tensile; non-tensile peaks accumulate
    // nothing (mean-stress factor validity).
    double dalpha = 0.0;
    if (sigma_pk > 0.0) {
      const CycleObservation obs{alpha_max, alpha_min, load.R};
      switch (fp.accumulation) {
        case AccumulationRule::GeneralizedOnePerCycle: {
          const FatigueState ns = accumulate_generalized(fs, obs, fp);
          dalpha = ns.alpha_bar - fs.alpha_bar;
          fs = ns;
          break;
        }
        case AccumulationRule::LegacyPerIncrement: {
          sample_cycle_alpha(samples, cycle == 1, eps_pk, load.R, g, E, split, m);
          dalpha = accumulate_legacy_per_increment(samples);
          fs.alpha_bar += dalpha;
          fs.peak_tracker = std::max(fs.peak_tracker, alpha_max);
          break;
        }
        case AccumulationRule::LegacyReformulated:
          dalpha = accumulate_legacy_reformulated(obs, fp.n, fp.alpha_n);
          fs.alpha_bar += dalpha;
          fs.peak_tracker = std::max(fs.peak_tracker, alpha_max);
          break;
        case AccumulationRule::LegacyRepresentative:
          dalpha = accumulate_legacy_representative(alpha_max, load.R, fp.n, fp.alpha_n);
          fs.alpha_bar += dalpha;
          fs.peak_tracker = std::max(fs.peak_tracker, alpha_max);
          break;
      }
    }

    record(cycle, dalpha, sigma_pk, eps_pk);
  }

  res.runout = !res.N_f.has_value();
  res.final_alpha_bar = fs.alpha_bar;
  res.final_phi = phi;
  res.final_history = H_raw;
  return res;
}

MonotonicCurve monotonic_response(const MaterialParams& mat, PfModel model,
                                  SplitKind /*split*/, const FatigueParams& fp,
                                  double alpha_bar_start, int n_points) {
  if (!(alpha_bar_start >= 0.0))
    throw std::invalid_argument("monotonic_response: alpha_bar_start must be >= 0");
  // A single monotonic reversal accumulates nothing, so the history is
  // frozen. Tension-only sweep: every split yields the full axial energy.
  const double f = fatigue_degradation(fp.fdeg, alpha_bar_start, fp.alpha0);
  const auto cp = critical_point(model, mat);
  const double eps_max = 3.0 * cp.eps_c;

  MonotonicCurve curve;
  curve.points.reserve(n_points + 1);
  auto sigma = [&](double e) {
    return homogeneous_stress_1d(model, mat, e, f, mat.k_residual);
  };
  for (int i = 0; i <= n_points; ++i) {
    const double e = eps_max * double(i) / n_points;
    curve.points.push_back({e, sigma(e)});
  }
  const double e_star = detail::golden_max(sigma, 0.0, eps_max, 1e-12 * eps_max);
  curve.peak_strain = e_star;
  curve.peak_stress = sigma(e_star);
  return curve;
}

}  // namespace pff
