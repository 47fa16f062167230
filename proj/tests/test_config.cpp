#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "pff/config.hpp"

using namespace pff;

namespace {

const char* kSmoothConfig = R"({
  "version": 1,
  "solver": "homogeneous",
  "material": "ModelMaterial",
  "model": "AT1",
  "split": "NoTension",
  "fatigue": {"fdeg": "F2", "alpha0": 100.0, "n": 1.0, "kappa": 0.5},
  "load": {"control": "load", "amplitudes": [0.3, 0.4, 0.5], "ratios": [-1.0],
           "max_cycles": 100000},
  "output": {"dir": "cfg_test_out"},
  "threads": 2
})";

}  // namespace

TEST_CASE("valid configuration parses with resolved defaults") {
  const RunConfig cfg = parse_run_config(kSmoothConfig);
  CHECK(cfg.material_name == "ModelMaterial");
  CHECK(cfg.mat.ell == doctest::Approx(0.375));
  CHECK(cfg.fp.alpha_n == doctest::Approx(0.5).epsilon(1e-10));          // 1/2 sigma_c eps_c
  CHECK(cfg.fp.alpha_e == doctest::Approx(0.02).epsilon(1e-12));         // sigma_e^2 / 2E
  CHECK(cfg.amplitudes.size() == 3);
  CHECK(cfg.max_cycles == 100000);
}

TEST_CASE("schema rejects unknown keys by name") {
  try {
    parse_run_config(R"({"version":1,"material":"ModelMaterial",
      "load":{"control":"load","amplituds":[0.3]}})");
    FAIL("expected rejection");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("load.amplituds") != std::string::npos);
  }
}

TEST_CASE("schema rejects invariant violations naming the field") {
  try {
    parse_run_config(R"({"version":1,
      "material":{"E":1.0,"nu":0.7,"Gc":1.0,"ell":0.375},
      "load":{"control":"load","amplitudes":[0.3]}})");
    FAIL("expected rejection");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("material.nu") != std::string::npos);
  }
}

TEST_CASE("fem solver requires a mesh block") {
  CHECK_THROWS_AS(parse_run_config(R"({"version":1,"solver":"fem",
    "material":"M300","load":{"control":"load","amplitudes":[300.0]}})"),
                  std::invalid_argument);
}

TEST_CASE("manifest roundtrip reproduces identical output") {
  const RunConfig cfg = parse_run_config(kSmoothConfig);
  const Campaign c1 = to_campaign(cfg);
  const auto pts1 = sn_curve(c1);
  const std::string csv1 = sn_points_csv(c1, pts1);

  // write the manifest, reload it as a configuration, re-run
  const std::string manifest =
      "{\n \"tool\": \"" + tool_version() + "\",\n \"config\": " +
      run_config_json(cfg) + "\n}\n";
  const RunConfig cfg2 = parse_run_config(manifest);
  const Campaign c2 = to_campaign(cfg2);
  const auto pts2 = sn_curve(c2);
  const std::string csv2 = sn_points_csv(c2, pts2);

  CHECK(csv1 == csv2);
}

TEST_CASE("fem configuration builds a campaign with a mesh") {
  const char* femcfg = R"({
    "version": 1,
    "solver": "fem",
    "material": "M300",
    "model": "AT1",
    "fatigue": {"n": 6.0, "alpha0": 17.0},
    "load": {"control": "load", "amplitudes": [540.0], "max_cycles": 50},
    "mesh": {"geometry": {"D": 12.7, "d": 6.35, "rho": 1.016}, "ref_ratio": 3.0}
  })";
  const RunConfig cfg = parse_run_config(femcfg);
  const Campaign c = to_campaign(cfg);
  REQUIRE(c.fem != nullptr);
  CHECK(c.fem->mesh.n_elems() > 50);
  CHECK(c.fem->traction_scale == doctest::Approx(0.25));  // (d/D)^2
  const auto pts = sn_curve(c);
  REQUIRE(pts.size() == 1);
  CHECK(pts[0].error.empty());
  CHECK(pts[0].runout);  // 50-cycle cap, elastic at the root for a while
}
