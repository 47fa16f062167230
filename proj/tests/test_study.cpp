#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "pff/study.hpp"

using namespace pff;

namespace {

Campaign model_campaign(PfModel model = PfModel::AT1) {
  const auto& preset = preset_by_name("ModelMaterial");
  Campaign c;
  c.material_name = preset.name;
  c.mat = preset.material(model);
  c.model = model;
  c.fp.alpha0 = preset.alpha0;
  c.fp.n = preset.n;
  c.fp.kappa = preset.kappa;
  c.fp.alpha_n = default_alpha_n(model, c.mat);
  c.fp.alpha_e = default_alpha_e(preset.sigma_e, c.mat);
  c.ratios = {-1.0};
  return c;
}

}  // namespace

TEST_CASE("material presets carry the published values") {
  const auto& aisi = preset_by_name("AISI4340");
  CHECK(aisi.kappa == doctest::Approx(0.55));
  CHECK(aisi.Gc == doctest::Approx(20.0));
  CHECK(aisi.alpha0 == doctest::Approx(5.0e-4));
  CHECK(aisi.n == doctest::Approx(10.0));
  CHECK(aisi.sigma_e == doctest::Approx(530.0));

  const auto& m300 = preset_by_name("M300");
  CHECK(m300.Gc == doctest::Approx(13.0));
  CHECK(m300.ell_at1 == doctest::Approx(0.315));
  CHECK(m300.alpha0 == doctest::Approx(17.0));
  CHECK(m300.n == doctest::Approx(6.0));

  const auto& mm = preset_by_name("ModelMaterial");
  CHECK(mm.ell_at1 == doctest::Approx(0.375));
  CHECK(mm.sigma_c(PfModel::AT1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(mm.sigma_c(PfModel::AT2) - 1.0) < 0.005);

  CHECK_THROWS_AS(preset_by_name("Unobtainium"), std::invalid_argument);
  CHECK_THROWS_AS(preset_by_name("AISI4340") .material(PfModel::AT2),
                  std::invalid_argument);
}

TEST_CASE("sn_curve runs the grid and marks runouts") {
  Campaign c = model_campaign();
  c.amplitudes = {0.15, 0.3, 0.5};
  c.max_cycles = 50'000;
  const auto points = sn_curve(c);
  REQUIRE(points.size() == 3);
  CHECK(points[0].runout);
  CHECK(points[0].N_f == c.max_cycles);
  CHECK(!points[1].runout);
  CHECK(!points[2].runout);
  CHECK(points[1].N_f > points[2].N_f);
}

TEST_CASE("sn_curve is deterministic across thread counts") {
  Campaign c = model_campaign();
  c.amplitudes = {0.25, 0.3, 0.35, 0.4, 0.45, 0.5};
  c.max_cycles = 100'000;
  c.threads = 1;
  const auto a = sn_curve(c);
  c.threads = 4;
  const auto b = sn_curve(c);
  const std::string csv_a = sn_points_csv(c, a);
  const std::string csv_b = sn_points_csv(c, b);
  CHECK(csv_a == csv_b);
  CHECK(csv_a.find("material,model,split,fdeg,n,kappa,alpha0,alpha_e,control,"
                   "amplitude,R,N_i,N_f,runout") == 0);
}

TEST_CASE("basquin fit recovers exact synthetic data") {
  std::vector<SNPoint> pts;
  const double Cstar = 1.0, mstar = -0.1;
  for (double N : {1e3, 1e4, 1e5, 1e6}) {
    SNPoint p;
    p.N_f = std::uint64_t(N);
    p.amplitude = Cstar * std::pow(N, mstar);
    pts.push_back(p);
  }
  const auto fit = fit_basquin(pts);
  CHECK(fit.m_star == doctest::Approx(-0.1).epsilon(1e-10));
  CHECK(fit.C_star == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(fit.m == doctest::Approx(10.0).epsilon(1e-10));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));

  // a runout point is excluded from the fit
  SNPoint runout;
  runout.N_f = 10'000'000;
  runout.amplitude = 0.9;
  runout.runout = true;
  pts.push_back(runout);
  const auto fit2 = fit_basquin(pts);
  CHECK(fit2.points_used == 4);
  CHECK(fit2.m_star == doctest::Approx(-0.1).epsilon(1e-10));

  CHECK_THROWS_AS(fit_basquin({pts[0], pts[1]}), std::invalid_argument);
}

TEST_CASE("fixed-amplitude lives shrink with load ratio, fixed-peak lives grow") {
  Campaign c = model_campaign();
  c.fp.alpha_e = default_alpha_e(0.2, c.mat);
  c.max_cycles = 3'000'000;

  // fixed sigma_a sweep
  c.amplitudes = {0.22};
  c.ratios = {-1.0, -0.5, 0.0, 0.5};
  const auto fixed_amp = sn_curve(c);
  for (std::size_t i = 1; i < fixed_amp.size(); ++i) {
    CAPTURE(fixed_amp[i].R);
    CHECK(fixed_amp[i].N_f <= fixed_amp[i - 1].N_f);
  }

  // fixed sigma_max sweep
  c.amplitude_is_peak = true;
  c.amplitudes = {0.5};
  const auto fixed_peak = sn_curve(c);
  for (std::size_t i = 1; i < fixed_peak.size(); ++i) {
    CAPTURE(fixed_peak[i].R);
    CHECK(fixed_peak[i].N_f >= fixed_peak[i - 1].N_f);
  }
}

TEST_CASE("lower endurance threshold extends the finite-life range") {
  // with a smaller alpha_e, an amplitude that was a runout becomes finite
  Campaign c = model_campaign();
  c.amplitudes = {0.15};
  c.max_cycles = 100'000;

  c.fp.alpha_e = default_alpha_e(0.2, c.mat);
  const auto hi = sn_curve(c);
  CHECK(hi[0].runout);

  c.fp.alpha_e = default_alpha_e(0.05, c.mat);
  const auto lo = sn_curve(c);
  CHECK(!lo[0].runout);
}

TEST_CASE("table regeneration for one pairing lands on the published coefficients") {
  const auto t = regenerate_table1(PfModel::AT1, FatigueDegradation::F2,
                                   {1.0, 2.0, 3.0, 4.0, 5.0});
  CAPTURE(t.C1);
  CAPTURE(t.C2);
  CHECK(std::abs(t.C1 - 0.50) <= 0.05);
  CHECK(std::abs(t.C2 - (-0.13)) <= 0.15);
  REQUIRE(t.samples.size() == 5);
  for (const auto& s : t.samples) CHECK(s.fit.r_squared > 0.99);
}

TEST_CASE("table regeneration needs enough exponents") {
  CHECK_THROWS_AS(regenerate_table1(PfModel::AT1, FatigueDegradation::F2, {1.0, 2.0}),
                  std::invalid_argument);
}

TEST_CASE("high-amplitude knee falls below the fitted line") {
  // points near the static strength drop under the Basquin extrapolation of
  // the low-amplitude regime
  Campaign c = model_campaign();
  c.fp.alpha_e = 0.0;
  c.amplitudes = {0.15, 0.2, 0.25, 0.3, 0.9};
  c.max_cycles = 1'000'000;
  auto pts = sn_curve(c);
  const SNPoint knee = pts.back();
  pts.pop_back();
  const auto fit = fit_basquin(pts);
  const double predicted_logN = (std::log10(knee.amplitude) - std::log10(fit.C_star)) / fit.m_star;
  CHECK(std::log10(double(knee.N_f)) < predicted_logN);
}
