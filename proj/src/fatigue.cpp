#include "pff/fatigue.hpp"

#include <cmath>
#include <stdexcept>

namespace pff {

void FatigueParams::validate() const {
  if (!(alpha0 > 0.0)) throw std::invalid_argument("FatigueParams.alpha0: must be > 0");
  if (!(n >= 1.0)) throw std::invalid_argument("FatigueParams.n: must be >= 1");
  if (!(kappa >= 0.0 && kappa <= 1.0))
    throw std::invalid_argument("FatigueParams.kappa: must lie in [0,1]");
  if (!(alpha_e >= 0.0))
    throw std::invalid_argument("FatigueParams.alpha_e: must be >= 0");
  if (!(alpha_n > 0.0)) throw std::invalid_argument("FatigueParams.alpha_n: must be > 0");
}

double default_alpha_n(PfModel model, const MaterialParams& mat) {
  const auto cp = critical_point(model, mat);
  return 0.5 * cp.sigma_c * cp.eps_c;
}

double default_alpha_e(double sigma_e, const MaterialParams& mat) {
  if (!(sigma_e >= 0.0))
    throw std::invalid_argument("default_alpha_e: sigma_e must be >= 0");
  return sigma_e * sigma_e / (2.0 * mat.E);
}

double fatigue_degradation(FatigueDegradation fdeg, double alpha_bar, double alpha0) {
  if (!(alpha_bar >= 0.0))
    throw std::domain_error("fatigue_degradation: alpha_bar must be >= 0");
  if (!(alpha0 > 0.0))
    throw std::domain_error("fatigue_degradation: alpha0 must be > 0");
  switch (fdeg) {
    case FatigueDegradation::F0: {
      if (alpha_bar <= alpha0) return 1.0;
      const double r = 1.0 - (alpha_bar - alpha0) / (alpha_bar + alpha0);
      return r * r;
    }
    case FatigueDegradation::F1: {
      const double r = 1.0 - alpha_bar / (alpha_bar + alpha0);
      return r * r;
    }
    case FatigueDegradation::F2: {
      if (alpha_bar >= alpha0) return 0.0;  // toughness fully exhausted
      const double r = 1.0 - alpha_bar / alpha0;
      return r * r;
    }
  }
  throw std::invalid_argument("fatigue_degradation: unknown function");
}

double fatigue_driving(double psi_plus, double phi) {
  if (!(psi_plus >= 0.0))
    throw std::domain_error("fatigue_driving: psi_plus must be >= 0");
  return degrade(phi) * psi_plus;
}

double walker_factor(double R, double kappa) {
  if (!(kappa >= 0.0 && kappa <= 1.0))
    throw std::domain_error("walker_factor: kappa must lie in [0,1]");
  const double half_range = 0.5 * (1.0 - R);
  if (half_range < 0.0)
    throw std::domain_error("walker_factor: R > 1 is outside the validity range");
  return std::pow(half_range, kappa);
}

FatigueState accumulate_generalized(const FatigueState& state,
                                    const CycleObservation& obs,
                                    const FatigueParams& p) {
  const double w = walker_factor(obs.R, p.kappa);
  FatigueState out = state;
  out.peak_tracker = std::max(state.peak_tracker, obs.alpha_max * w * w);
  // Gate opens strictly above the endurance threshold and latches.
  if (out.peak_tracker > p.alpha_e && obs.alpha_max > 0.0) {
    out.alpha_bar += std::pow(obs.alpha_max / p.alpha_n, p.n) *
                     std::pow(w, 2.0 * p.n);
  }
  return out;
}

double accumulate_legacy_per_increment(std::span<const double> alpha_seq) {
  if (alpha_seq.size() < 2)
    throw std::invalid_argument("accumulate_legacy_per_increment: need >= 2 samples");
  double sum = 0.0;
  for (std::size_t i = 1; i < alpha_seq.size(); ++i) {
    const double d = alpha_seq[i] - alpha_seq[i - 1];
    if (d > 0.0) sum += d;
  }
  return sum;
}

namespace {
double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }
}  // namespace

double accumulate_legacy_reformulated(const CycleObservation& obs, double n,
                                      double alpha_n) {
  return (std::pow(obs.alpha_max, n) - sgn(obs.R) * std::pow(obs.alpha_min, n)) /
         std::pow(alpha_n, n);
}

double accumulate_legacy_representative(double alpha_max, double R, double n,
                                        double alpha_n) {
  return std::pow(alpha_max / alpha_n, n) *
         (1.0 - sgn(R) * std::pow(std::abs(R), 2.0 * n));
}

double estimate_alpha0(double N_ref, double stress_ratio_sc, double n) {
  if (!(N_ref > 0.0)) throw std::domain_error("estimate_alpha0: N_ref must be > 0");
  if (!(stress_ratio_sc > 0.0 && stress_ratio_sc < 1.0))
    throw std::domain_error("estimate_alpha0: sigma/sigma_c must lie in (0,1)");
  return N_ref * std::pow(stress_ratio_sc, 2.0 * n) / (1.0 - stress_ratio_sc);
}

SlopeCoefficients slope_coefficients(PfModel model, FatigueDegradation fdeg) {
  if (model == PfModel::AT1) {
    switch (fdeg) {
      case FatigueDegradation::F0: return {0.50, -0.56};
      case FatigueDegradation::F1: return {0.50, -0.63};
      case FatigueDegradation::F2: return {0.50, -0.13};
    }
  } else {
    switch (fdeg) {
      case FatigueDegradation::F0: return {0.50, -0.55};
      case FatigueDegradation::F1: return {0.49, -0.61};
      case FatigueDegradation::F2: return {0.49, -0.12};
    }
  }
  throw std::invalid_argument("slope_coefficients: unknown model/fdeg combination");
}

double slope_to_exponent(double m, PfModel model, FatigueDegradation fdeg) {
  if (!(m > 0.0)) throw std::domain_error("slope_to_exponent: m must be > 0");
  const auto c = slope_coefficients(model, fdeg);
  return c.C1 * m + c.C2;
}

}  // namespace pff
