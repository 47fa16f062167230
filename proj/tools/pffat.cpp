// Command-line driver: campaign runs, verification suites, mesh generation
// and preset listing. See README for the configuration schema.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "pff/config.hpp"
#include "pff/fem/vtk.hpp"
#include "pff/verify.hpp"

namespace {

int cmd_run(const std::string& config_path, const std::string& out_override,
            int threads_override, double max_cycles_override) {
  pff::RunConfig cfg;
  try {
    cfg = pff::load_run_config(config_path);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  }
  if (!out_override.empty()) cfg.output.dir = out_override;
  if (threads_override > 0) cfg.threads = threads_override;
  if (max_cycles_override > 0) cfg.max_cycles = std::uint64_t(max_cycles_override);

  try {
    std::filesystem::create_directories(cfg.output.dir);

    const pff::Campaign campaign = pff::to_campaign(cfg);
    const auto points = pff::sn_curve(campaign);

    const std::string csv = pff::sn_points_csv(campaign, points);
    std::ofstream(cfg.output.dir + "/results.csv") << csv;

    std::ofstream(cfg.output.dir + "/manifest.json")
        << "{\n \"tool\": \"" << pff::tool_version() << "\",\n \"config\": "
        << pff::run_config_json(cfg) << "\n}\n";

    int failures = 0;
    for (const auto& p : points)
      if (!p.error.empty()) {
        std::fprintf(stderr, "point (amplitude %.6g, R %.3g) failed: %s\n",
                     p.amplitude, p.R, p.error.c_str());
        ++failures;
      }
    std::printf("%zu grid points -> %s/results.csv (%d failed points)\n",
                points.size(), cfg.output.dir.c_str(), failures);
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "run failed: %s\n", e.what());
    return 1;
  }
}

int cmd_verify(const std::string& suite) {
  try {
    const auto results =
        suite == "all" ? pff::verify_all() : pff::verify_suite(suite);
    return pff::report(results) ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "verify failed: %s\n", e.what());
    return 2;
  }
}

int cmd_mesh(const std::string& material, int kt, double D, double d, double rho,
             double angle, double length, double ell, double ref_ratio,
             const std::string& out, const std::string& vtk_out) {
  try {
    pff::NotchGeometry geom;
    double ell_eff = ell;
    if (!material.empty()) {
      geom = material == "M300" ? pff::m300_notch(kt) : pff::aisi4340_notch(kt);
      if (ell_eff <= 0.0) ell_eff = pff::preset_by_name(material).ell_at1;
    } else {
      geom.D = D;
      geom.d = d;
      geom.rho = rho;
      geom.groove_angle_deg = angle;
      geom.length = length;
    }
    const pff::Mesh mesh = pff::generate_notched_mesh(geom, ell_eff, ref_ratio);
    pff::write_mesh_file(mesh, out);
    std::printf("%d nodes, %d elements -> %s\n", mesh.n_nodes(), mesh.n_elems(),
                out.c_str());
    if (!vtk_out.empty()) {
      std::vector<double> zero_u(2 * mesh.n_nodes(), 0.0), zero_phi(mesh.n_nodes(), 0.0);
      std::vector<double> zero_e(mesh.n_elems(), 0.0);
      pff::write_vtk(vtk_out, mesh, zero_u, zero_phi, zero_e, zero_e);
    }
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "mesh generation failed: %s\n", e.what());
    return 1;
  }
}

int cmd_presets() {
  std::printf("%-14s %10s %6s %8s %10s %10s %10s %6s %6s\n", "name", "E", "nu", "Gc",
              "ell(AT1)", "sigma_e", "alpha0", "n", "kappa");
  for (const auto& p : pff::material_presets()) {
    std::printf("%-14s %10.4g %6.2f %8.4g %10.4g %10.4g %10.4g %6.3g %6.3g\n",
                p.name.c_str(), p.E, p.nu, p.Gc, p.ell_at1, p.sigma_e, p.alpha0, p.n,
                p.kappa);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phase field high-cycle fatigue solver"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  int threads = 0;
  double max_cycles = 0;
  auto* run = app.add_subcommand("run", "execute a configured campaign");
  run->add_option("--config", config_path, "configuration file (JSON)")->required();
  run->add_option("--out", out_dir, "output directory override");
  run->add_option("--threads", threads, "worker pool size override");
  run->add_option("--max-cycles-override", max_cycles, "runout cap override");

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "invariants | table1 | oracle | all");

  std::string mesh_material, mesh_out = "mesh.json", mesh_vtk;
  int mesh_kt = 2;
  double mD = 0, md = 0, mrho = 0, mangle = 60, mlength = 0, mell = 0, mref = 5;
  auto* mesh = app.add_subcommand("mesh", "generate and write a notched mesh");
  mesh->add_option("--material", mesh_material, "M300 or AISI4340 preset geometry");
  mesh->add_option("--kt", mesh_kt, "preset notch acuity (2, 3 or 5)");
  mesh->add_option("--D", mD, "gross diameter");
  mesh->add_option("--d", md, "net diameter");
  mesh->add_option("--rho", mrho, "notch root radius");
  mesh->add_option("--angle", mangle, "groove included angle [deg]");
  mesh->add_option("--length", mlength, "specimen half-length (0 = 2D)");
  mesh->add_option("--ell", mell, "phase field length scale for sizing");
  mesh->add_option("--ref-ratio", mref, "root element size = ell/ref_ratio");
  mesh->add_option("--out", mesh_out, "output mesh file");
  mesh->add_option("--vtk", mesh_vtk, "also write a VTK view of the mesh");

  auto* presets = app.add_subcommand("presets", "list built-in material presets");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return cmd_run(config_path, out_dir, threads, max_cycles);
  if (verify->parsed()) return cmd_verify(suite);
  if (mesh->parsed())
    return cmd_mesh(mesh_material, mesh_kt, mD, md, mrho, mangle, mlength, mell, mref,
                    mesh_out, mesh_vtk);
  if (presets->parsed()) return cmd_presets();
  return 1;
}
