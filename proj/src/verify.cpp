#include "pff/verify.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "pff/config.hpp"
#include "pff/fem/solver.hpp"
#include "pff/study.hpp"

namespace pff {

namespace {

char buf[512];

CheckResult check(const std::string& name, bool pass, const std::string& detail) {
  return {name, pass, detail};
}

std::string fmt(const char* f, auto... args) {
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

MaterialParams model_material(PfModel model) {
  return MaterialParams::make(1.0, 0.3, 1.0, model == PfModel::AT1 ? 0.375 : 0.1055);
}

FatigueParams model_fatigue(PfModel model, const MaterialParams& mat,
                            double alpha0 = 100.0, double n = 1.0) {
  FatigueParams fp;
  fp.alpha0 = alpha0;
  fp.n = n;
  fp.kappa = 0.5;
  fp.alpha_n = default_alpha_n(model, mat);
  fp.alpha_e = default_alpha_e(0.2, mat);
  return fp;
}

CycleLoad stress_load(double amp, double R = -1.0, std::uint64_t cap = 10'000'000) {
  CycleLoad l;
  l.control = ControlMode::Load;
  l.amplitude = amp;
  l.R = R;
  l.max_cycles = cap;
  return l;
}

FatigueParams m300_fatigue(const MaterialParams& mat) {
  FatigueParams fp;
  fp.alpha0 = 17.0;
  fp.n = 6.0;
  fp.kappa = 0.5;
  fp.alpha_n = default_alpha_n(PfModel::AT1, mat);
  fp.alpha_e = default_alpha_e(650.0, mat);
  return fp;
}

struct NotchRun {
  std::uint64_t N_i = 0, N_f = 0;
  bool runout = false;
};

NotchRun run_notched(int kt, double sigma_nom, std::uint64_t cap,
                     double ell_scale = 1.0) {
  const auto mat = MaterialParams::make(210e3, 0.3, 13.0, 0.315 * ell_scale);
  const auto geom = m300_notch(kt);
  const Mesh mesh = generate_notched_mesh(geom, mat.ell, 5.0);
  FemOptions fe;
  fe.tol_rel = 1e-7;
  FemProblem pb(mesh, mat, PfModel::AT1, SplitKind::NoTension, m300_fatigue(mat), fe);
  CycleLoad load = stress_load(sigma_nom * geom.net_to_gross_area(), -1.0, cap);
  FemFatigueOptions fo;
  fo.record_trace = false;
  const FemLifeResult res = run_fatigue_fem(pb, load, fo);
  return {res.N_i.value_or(0), res.N_f.value_or(cap), res.runout};
}

}  // namespace

std::vector<CheckResult> verify_critical_strength() {
  std::vector<CheckResult> out;

  const auto m1 = model_material(PfModel::AT1);
  const auto c1 = critical_point(PfModel::AT1, m1);
  out.push_back(check("1a critical strength AT1 closed form",
                      std::abs(c1.sigma_c - 1.0) <= 1e-10,
                      fmt("sigma_c = %.15f (expect 1.0 exactly)", c1.sigma_c)));

  const auto m2 = model_material(PfModel::AT2);
  const auto c2 = critical_point(PfModel::AT2, m2);
  out.push_back(check("1b critical strength AT2 by maximization",
                      std::abs(c2.sigma_c - 1.0) / 1.0 < 0.005,
                      fmt("sigma_c = %.6f (expect 1.0 within 0.5%%)", c2.sigma_c)));

  // The published steel triple (1793 MPa, Gc=20, ell=0.318) is internally
  // inconsistent; both self-consistent readings of the same strength anchor
  // are checked: the printed length scale with the toughness that produced
  // it, and the printed toughness with the strength-derived length scale.
  const auto a = MaterialParams::make(210e3, 0.3, 13.0, 0.318);
  const double sa = critical_point(PfModel::AT1, a).sigma_c;
  const auto b =
      MaterialParams::make(210e3, 0.3, 20.0, 3.0 * 210e3 * 20.0 / (8.0 * 1793.0 * 1793.0));
  const double sb = critical_point(PfModel::AT1, b).sigma_c;
  out.push_back(check(
      "1c high-strength steel anchor (1793 MPa within 1%)",
      std::abs(sa - 1793.0) / 1793.0 < 0.01 && std::abs(sb - 1793.0) / 1793.0 < 1e-6,
      fmt("ell=0.318 with Gc=13: %.1f MPa; strength-derived ell=0.4899 with Gc=20: "
          "%.1f MPa",
          sa, sb)));
  return out;
}

std::vector<CheckResult> verify_table1() {
  const double want[2][3][2] = {{{0.50, -0.56}, {0.50, -0.63}, {0.50, -0.13}},
                                {{0.50, -0.55}, {0.49, -0.61}, {0.49, -0.12}}};
  std::vector<CheckResult> out;
  for (int mi = 0; mi < 2; ++mi) {
    for (int fi = 0; fi < 3; ++fi) {
      const PfModel model = mi == 0 ? PfModel::AT1 : PfModel::AT2;
      const FatigueDegradation fd = fi == 0   ? FatigueDegradation::F0
                                    : fi == 1 ? FatigueDegradation::F1
                                              : FatigueDegradation::F2;
      const auto t = regenerate_table1(model, fd, {1, 2, 3, 4, 5});
      const bool ok = std::abs(t.C1 - want[mi][fi][0]) <= 0.05 &&
                      std::abs(t.C2 - want[mi][fi][1]) <= 0.15;
      out.push_back(check(
          fmt("2 slope relation %s/%s", to_string(model).c_str(),
              to_string(fd).c_str()),
          ok,
          fmt("C1 = %.3f (ref %.2f +- 0.05), C2 = %+.3f (ref %+.2f +- 0.15)", t.C1,
              want[mi][fi][0], t.C2, want[mi][fi][1])));
    }
  }
  return out;
}

std::vector<CheckResult> verify_accumulation_equivalence() {
  std::vector<CheckResult> out;
  const auto mat = model_material(PfModel::AT1);

  // fully reversed, no-tension, n = 1, alpha_n = 1, no endurance gate
  FatigueParams fp;
  fp.alpha0 = 100.0;
  fp.n = 1.0;
  fp.kappa = 0.5;
  fp.alpha_n = 1.0;
  fp.alpha_e = 0.0;

  auto gen = fp;
  gen.accumulation = AccumulationRule::GeneralizedOnePerCycle;
  auto leg = fp;
  leg.accumulation = AccumulationRule::LegacyPerIncrement;

  auto load_rep = stress_load(0.5);
  auto load_sub = stress_load(0.5);
  load_sub.substeps_per_cycle = 8;

  const auto a = run_cycles(load_rep, mat, PfModel::AT1, SplitKind::NoTension, gen);
  const auto b = run_cycles(load_sub, mat, PfModel::AT1, SplitKind::NoTension, leg);

  double max_diff = 0.0;
  const std::size_t n = std::min(a.trace.size(), b.trace.size());
  for (std::size_t i = 0; i + 1 < n; ++i)
    max_diff = std::max(max_diff,
                        std::abs(a.trace[i].delta_alpha - b.trace[i].delta_alpha));
  out.push_back(check("3a per-cycle equality generalized vs per-increment",
                      n > 100 && max_diff <= 1e-10,
                      fmt("max |d alpha_gen - d alpha_inc| = %.2e over %zu cycles",
                          max_diff, n)));

  const std::uint64_t Na = a.N_f.value_or(0), Nb = b.N_f.value_or(0);
  out.push_back(check("3b lives agree within one cycle",
                      Na > 0 && Nb > 0 && (Na > Nb ? Na - Nb : Nb - Na) <= 1,
                      fmt("N_f = %llu vs %llu", (unsigned long long)Na,
                          (unsigned long long)Nb)));

  // representative vs sub-stepped mode on the reference configuration
  const auto fp_ref = model_fatigue(PfModel::AT1, mat);
  auto sub_ref = stress_load(0.5);
  sub_ref.substeps_per_cycle = 8;
  const auto r1 = run_cycles(stress_load(0.5), mat, PfModel::AT1, SplitKind::NoTension,
                             fp_ref);
  const auto r8 = run_cycles(sub_ref, mat, PfModel::AT1, SplitKind::NoTension, fp_ref);
  const std::uint64_t n1 = r1.N_f.value_or(0), n8 = r8.N_f.value_or(0);
  out.push_back(check("3c representative-load mode matches sub-stepped mode",
                      n1 > 0 && n8 > 0 && (n1 > n8 ? n1 - n8 : n8 - n1) <= 1,
                      fmt("N_f = %llu (1 substep) vs %llu (8 substeps)",
                          (unsigned long long)n1, (unsigned long long)n8)));
  return out;
}

std::vector<CheckResult> verify_alpha0_roundtrip() {
  const auto mat = model_material(PfModel::AT1);
  const auto fp = model_fatigue(PfModel::AT1, mat);
  const double s = 0.4;

  const auto src = run_cycles(stress_load(s), mat, PfModel::AT1, SplitKind::NoTension, fp);
  const double N_src = double(src.N_f.value_or(0));

  const double a0 = estimate_alpha0(N_src, s, fp.n);
  auto fp2 = fp;
  fp2.alpha0 = a0;
  const auto back = run_cycles(stress_load(s), mat, PfModel::AT1, SplitKind::NoTension, fp2);
  const double N_back = double(back.N_f.value_or(0));

  const bool ok = N_src > 0 && N_back > 0 && std::abs(N_back - N_src) / N_src <= 0.10;
  return {check("4 alpha0 estimate roundtrip at sigma/sigma_c = 0.4", ok,
                fmt("N = %.0f -> alpha0 = %.4g -> N = %.0f (%.2f%% off)", N_src, a0,
                    N_back, 100.0 * std::abs(N_back - N_src) / N_src))};
}

std::vector<CheckResult> verify_endurance() {
  std::vector<CheckResult> out;
  const auto m1 = model_material(PfModel::AT1);
  const auto fp1 = model_fatigue(PfModel::AT1, m1);

  const auto low = run_cycles(stress_load(0.15), m1, PfModel::AT1,
                              SplitKind::NoTension, fp1,
                              HomogeneousOptions{.record_trace = false});
  const auto mono_low =
      monotonic_response(m1, PfModel::AT1, SplitKind::NoTension, fp1,
                         low.final_alpha_bar);
  out.push_back(check(
      "5a sub-endurance amplitude runs out with intact strength",
      low.runout && std::abs(mono_low.peak_stress - 1.0) < 1e-6,
      fmt("runout = %d after 1e7 cycles, monotonic peak = %.8f", int(low.runout),
          mono_low.peak_stress)));

  // above the endurance limit: finite life, degraded strength, AT1 drop
  // exceeding AT2 drop after the same number of cycles
  const auto cap150 = [&](const MaterialParams& m, PfModel model,
                          const FatigueParams& fp) {
    auto l = stress_load(0.5 * critical_point(model, m).sigma_c);
    l.max_cycles = 150;
    return run_cycles(l, m, model, SplitKind::NoTension, fp,
                      HomogeneousOptions{.record_trace = false});
  };
  const auto full = run_cycles(stress_load(0.5), m1, PfModel::AT1,
                               SplitKind::NoTension, fp1,
                               HomogeneousOptions{.record_trace = false});

  const auto m2 = model_material(PfModel::AT2);
  const auto fp2 = model_fatigue(PfModel::AT2, m2);
  const auto a1 = cap150(m1, PfModel::AT1, fp1);
  const auto a2 = cap150(m2, PfModel::AT2, fp2);
  const double peak1 = monotonic_response(m1, PfModel::AT1, SplitKind::NoTension, fp1,
                                          a1.final_alpha_bar)
                           .peak_stress;
  const double peak2 = monotonic_response(m2, PfModel::AT2, SplitKind::NoTension, fp2,
                                          a2.final_alpha_bar)
                           .peak_stress;
  const double sc2 = critical_point(PfModel::AT2, m2).sigma_c;
  const double drop1 = 1.0 - peak1;
  const double drop2 = 1.0 - peak2 / sc2;
  out.push_back(check(
      "5b above-endurance amplitude: finite life, AT1 strength drop exceeds AT2",
      full.N_f.has_value() && drop1 > drop2 && drop1 > 0.0 && drop2 > 0.0,
      fmt("N_f = %llu; strength drop after 150 cycles: AT1 %.3f vs AT2 %.3f",
          (unsigned long long)full.N_f.value_or(0), drop1, drop2)));
  return out;
}

std::vector<CheckResult> verify_load_ratio_trends() {
  std::vector<CheckResult> out;
  const auto mat = model_material(PfModel::AT1);
  Campaign c;
  c.material_name = "ModelMaterial";
  c.mat = mat;
  c.model = PfModel::AT1;
  c.fp = model_fatigue(PfModel::AT1, mat);
  c.ratios = {-1.0, -0.5, 0.0, 0.5};
  c.max_cycles = 5'000'000;

  c.amplitudes = {0.22};
  const auto fixed_amp = sn_curve(c);
  bool dec = true;
  std::string lives;
  for (std::size_t i = 0; i < fixed_amp.size(); ++i) {
    if (i > 0 && fixed_amp[i].N_f > fixed_amp[i - 1].N_f) dec = false;
    lives += fmt("%s%llu", i ? ", " : "", (unsigned long long)fixed_amp[i].N_f);
  }
  out.push_back(check("6a fixed sigma_a: lives non-increasing in R", dec,
                      "N_f over R in {-1,-0.5,0,0.5}: " + lives));

  c.amplitude_is_peak = true;
  c.amplitudes = {0.5};
  const auto fixed_peak = sn_curve(c);
  bool inc = true;
  lives.clear();
  for (std::size_t i = 0; i < fixed_peak.size(); ++i) {
    if (i > 0 && fixed_peak[i].N_f < fixed_peak[i - 1].N_f) inc = false;
    lives += fmt("%s%llu", i ? ", " : "", (unsigned long long)fixed_peak[i].N_f);
  }
  out.push_back(check("6b fixed sigma_max: lives non-decreasing in R", inc,
                      "N_f over R in {-1,-0.5,0,0.5}: " + lives));
  return out;
}

std::vector<CheckResult> verify_single_element_oracle() {
  std::vector<CheckResult> out;
  for (PfModel model : {PfModel::AT1, PfModel::AT2}) {
    // nu = 0 so the single axisymmetric element is exactly the 1D state
    const auto m = MaterialParams::make(1.0, 0.0, 1.0,
                                        model == PfModel::AT1 ? 0.375 : 0.1055);
    auto fp = model_fatigue(model, m, 400.0);
    CycleLoad load;
    load.control = ControlMode::Displacement;
    load.amplitude = 0.5 * critical_point(model, m).eps_c;
    load.R = -1.0;
    load.max_cycles = 1000;

    const auto ref = run_cycles(load, m, model, SplitKind::NoTension, fp);
    const Mesh mesh = rect_mesh(0.7, 1.3, 1, 1);
    FemProblem pb(mesh, m, model, SplitKind::NoTension, fp);
    const auto fem = run_fatigue_fem(pb, load, {});

    double max_rel = 0.0;
    const std::size_t n = std::min(ref.trace.size(), fem.trace.size());
    for (std::size_t i = 0; i < n; ++i) {
      const double dphi = std::abs(fem.trace[i].max_phi - ref.trace[i].phi) /
                          std::max(1e-12, std::abs(ref.trace[i].phi));
      const double dab =
          std::abs(fem.trace[i].max_alpha_bar - ref.trace[i].alpha_bar) /
          std::max(1e-12, std::abs(ref.trace[i].alpha_bar));
      max_rel = std::max({max_rel, dphi, dab});
    }
    out.push_back(check(
        fmt("7 single-element oracle (%s, 1000 cycles)", to_string(model).c_str()),
        n >= 900 && max_rel <= 1e-6,
        fmt("max relative deviation in phi and alpha_bar: %.2e over %zu cycles",
            max_rel, n)));
  }
  return out;
}

std::vector<CheckResult> verify_notched_trends() {
  std::vector<CheckResult> out;

  // (a) strict life ordering at three equal nominal peak stresses; the
  // bluntest bar is run past the Kt=3 life and recorded as a survivor
  const double snoms[3] = {500.0, 540.0, 580.0};
  const std::uint64_t kt2_caps[3] = {7500, 3000, 1300};
  for (int i = 0; i < 3; ++i) {
    const NotchRun r3 = run_notched(3, snoms[i], 20000);
    const NotchRun r5 = run_notched(5, snoms[i], 20000);
    const NotchRun r2 = run_notched(2, snoms[i], kt2_caps[i]);
    const bool ordered = !r3.runout && !r5.runout && r3.N_f > r5.N_f &&
                         (r2.runout ? r2.N_f : r2.N_f) > r3.N_f;
    out.push_back(check(
        fmt("8a life ordering Kt2 > Kt3 > Kt5 at %.0f MPa", snoms[i]), ordered,
        fmt("N_f: Kt2 %s%llu, Kt3 %llu, Kt5 %llu", r2.runout ? ">" : "",
            (unsigned long long)r2.N_f, (unsigned long long)r3.N_f,
            (unsigned long long)r5.N_f)));
  }

  // (b) nucleation-to-failure separation across notch acuity at matched
  // life decade: sharper notches nucleate earlier, and the absolute gap
  // widens over the resolvable Kt2 -> Kt3 step
  const NotchRun g2 = run_notched(2, 640.0, 4000);
  const NotchRun g3 = run_notched(3, 540.0, 20000);
  const NotchRun g5 = run_notched(5, 500.0, 20000);
  const bool nucleation = !g2.runout && !g3.runout && !g5.runout &&
                          g2.N_i > g3.N_i && g3.N_i >= g5.N_i;
  const bool gap_widens = (g3.N_f - g3.N_i) > (g2.N_f - g2.N_i);
  out.push_back(check(
      "8b initiation-failure separation grows with notch acuity", nucleation && gap_widens,
      fmt("(N_i, N_f): Kt2 (%llu, %llu), Kt3 (%llu, %llu), Kt5 (%llu, %llu)",
          (unsigned long long)g2.N_i, (unsigned long long)g2.N_f,
          (unsigned long long)g3.N_i, (unsigned long long)g3.N_f,
          (unsigned long long)g5.N_i, (unsigned long long)g5.N_f)));

  // (c) doubling the length scale shortens the life
  const NotchRun dbl = run_notched(2, 640.0, 4000, 2.0);
  out.push_back(check(
      "8c doubling the length scale reduces the life", !dbl.runout && !g2.runout &&
                                                           dbl.N_f < g2.N_f,
      fmt("N_f = %llu at 2 ell vs %llu at ell", (unsigned long long)dbl.N_f,
          (unsigned long long)g2.N_f)));
  return out;
}

std::vector<CheckResult> verify_tangents() {
  std::vector<CheckResult> out;
  const auto mat = MaterialParams::make(210e3, 0.3, 13.0, 0.315);
  const Mesh mesh = rect_mesh(1.0, 1.4, 2, 2);
  FatigueParams fp;
  fp.alpha0 = 100.0;
  fp.alpha_n = default_alpha_n(PfModel::AT2, mat);
  FemProblem pb(mesh, mat, PfModel::AT2, SplitKind::NoTension, fp);
  const int nn = mesh.n_nodes();

  std::mt19937 rng(4242);
  std::uniform_real_distribution<double> du(-1e-3, 1e-3), dp(0.1, 0.8);
  std::vector<double> u(2 * nn), phi(nn);
  for (auto& x : u) x = du(rng);
  for (auto& x : phi) x = dp(rng);

  const auto sys = pb.assemble(u, phi, true, false);

  double max_rel_u = 0.0;
  const double hu = 1e-7;
  for (int j = 0; j < 2 * nn; ++j) {
    auto up = u, um = u;
    up[j] += hu;
    um[j] -= hu;
    const auto rp = pb.assemble(up, phi, false, false);
    const auto rm = pb.assemble(um, phi, false, false);
    for (int i = 0; i < 2 * nn; ++i) {
      const double fd = (rp.r_u[i] - rm.r_u[i]) / (2 * hu);
      max_rel_u = std::max(max_rel_u,
                           std::abs(sys.K_u.at(i, j) - fd) / (mat.E));
    }
  }
  double max_rel_p = 0.0;
  const double hp = 1e-7;
  for (int j = 0; j < nn; ++j) {
    auto pp = phi, pm = phi;
    pp[j] += hp;
    pm[j] -= hp;
    const auto rp = pb.assemble(u, pp, false, false);
    const auto rm = pb.assemble(u, pm, false, false);
    for (int i = 0; i < nn; ++i) {
      const double fd = (rp.r_phi[i] - rm.r_phi[i]) / (2 * hp);
      max_rel_p = std::max(max_rel_p,
                           std::abs(sys.K_phi.at(i, j) - fd) / (mat.Gc / mat.ell));
    }
  }
  out.push_back(check("9a tangents match finite differences",
                      max_rel_u < 1e-6 && max_rel_p < 1e-6,
                      fmt("scaled max deviation: K_u %.2e, K_phi %.2e", max_rel_u,
                          max_rel_p)));

  double asym = 0.0;
  for (int i = 0; i < 2 * nn; ++i)
    for (int j = 0; j < 2 * nn; ++j)
      asym = std::max(asym, std::abs(sys.K_u.at(i, j) - sys.K_u.at(j, i)));

  // positive definiteness of the constrained system, including with a fully
  // broken phase field where only the residual stiffness remains
  auto bc = pb.assemble(u, phi, true, true);
  std::vector<double> phi_broken(nn, 1.0);
  auto bcb = pb.assemble(u, phi_broken, true, true);
  out.push_back(check("9b blocks symmetric and positive definite",
                      asym == 0.0 && bc.K_u.factorize() && bc.K_phi.factorize() &&
                          bcb.K_u.factorize() && bcb.K_phi.factorize(),
                      fmt("max |K_u - K_u^T| = %.1e; constrained factorizations "
                          "succeed (intact and fully broken)",
                          asym)));
  return out;
}

std::vector<CheckResult> verify_split_consistency() {
  std::vector<CheckResult> out;
  const auto mat = MaterialParams::make(210e3, 0.3, 13.0, 0.315);
  std::mt19937 rng(1337);
  std::uniform_real_distribution<double> u(-5e-3, 5e-3), mag(1e-4, 5e-3);

  double worst = 0.0;
  bool nonneg = true;
  for (int trial = 0; trial < 1000; ++trial) {
    const Sym3 eps{u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)};
    const double psi0 = undamaged_energy(eps, mat);
    for (SplitKind kind : {SplitKind::Spectral, SplitKind::VolDev}) {
      const auto s = split_energy(eps, mat, kind);
      nonneg = nonneg && s.plus >= 0.0 && s.minus >= 0.0;
      worst = std::max(worst, std::abs(s.plus + s.minus - psi0) / std::max(psi0, 1e-300));
    }
  }
  out.push_back(check("10a spectral and vol-dev partition the energy",
                      nonneg && worst <= 1e-10,
                      fmt("max relative partition defect over 1000 tensors: %.2e",
                          worst)));

  bool signs = true;
  for (int trial = 0; trial < 500; ++trial) {
    const double a = -mag(rng), b = -mag(rng), c = -mag(rng);
    const auto sn = split_energy(Sym3::diag(a, b, c), mat, SplitKind::NoTension);
    signs = signs && sn.plus == 0.0;
    const auto sp = split_energy(Sym3::diag(-a, -b, 0.0), mat, SplitKind::NoTension);
    signs = signs && sp.minus == 0.0;
  }
  out.push_back(check("10b no-tension split sign behavior", signs,
                      "psi+ vanishes for negative-semidefinite strains, psi- for "
                      "positive-semidefinite"));
  return out;
}

std::vector<CheckResult> verify_all() {
  std::vector<CheckResult> all;
  for (auto* fn : {verify_critical_strength, verify_table1,
                   verify_accumulation_equivalence, verify_alpha0_roundtrip,
                   verify_endurance, verify_load_ratio_trends,
                   verify_single_element_oracle, verify_notched_trends,
                   verify_tangents, verify_split_consistency}) {
    auto part = fn();
    all.insert(all.end(), part.begin(), part.end());
  }
  return all;
}

std::vector<CheckResult> verify_suite(const std::string& name) {
  if (name == "invariants") {
    auto all = verify_split_consistency();
    auto t = verify_tangents();
    all.insert(all.end(), t.begin(), t.end());
    auto e = verify_accumulation_equivalence();
    all.insert(all.end(), e.begin(), e.end());
    return all;
  }
  if (name == "table1") return verify_table1();
  if (name == "oracle") return verify_single_element_oracle();
  throw std::invalid_argument("unknown verify suite: " + name +
                              " (expected invariants, table1 or oracle)");
}

bool report(const std::vector<CheckResult>& results) {
  bool all = true;
  for (const auto& r : results) {
    std::printf("[%s] %s - %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                r.detail.c_str());
    all = all && r.pass;
  }
  return all;
}

}  // namespace pff
