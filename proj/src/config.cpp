#include "pff/config.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace pff {

using nlohmann::json;

namespace {

void check_keys(const json& j, const std::string& path,
                const std::set<std::string>& allowed) {
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key()))
      throw std::invalid_argument("unknown key: " + path + item.key());
  }
}

const json* find(const json& j, const char* key) {
  const auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

double need_number(const json& j, const std::string& path, const char* key) {
  const json* v = find(j, key);
  if (!v || !v->is_number())
    throw std::invalid_argument(path + key + ": required number");
  return v->get<double>();
}

double opt_number(const json& j, const std::string& path, const char* key,
                  double fallback) {
  const json* v = find(j, key);
  if (!v) return fallback;
  if (!v->is_number())
    throw std::invalid_argument(path + key + ": must be a number");
  return v->get<double>();
}

bool opt_bool(const json& j, const std::string& path, const char* key, bool fallback) {
  const json* v = find(j, key);
  if (!v) return fallback;
  if (!v->is_boolean())
    throw std::invalid_argument(path + key + ": must be a boolean");
  return v->get<bool>();
}

std::string opt_string(const json& j, const std::string& path, const char* key,
                       const std::string& fallback) {
  const json* v = find(j, key);
  if (!v) return fallback;
  if (!v->is_string())
    throw std::invalid_argument(path + key + ": must be a string");
  return v->get<std::string>();
}

PfModel parse_model(const std::string& s) {
  if (s == "AT1") return PfModel::AT1;
  if (s == "AT2") return PfModel::AT2;
  throw std::invalid_argument("model: must be \"AT1\" or \"AT2\"");
}

SplitKind parse_split(const std::string& s) {
  if (s == "NoTension") return SplitKind::NoTension;
  if (s == "Spectral") return SplitKind::Spectral;
  if (s == "VolDev") return SplitKind::VolDev;
  if (s == "None") return SplitKind::None;
  throw std::invalid_argument(
      "split: must be one of NoTension, Spectral, VolDev, None");
}

FatigueDegradation parse_fdeg(const std::string& s) {
  if (s == "F0") return FatigueDegradation::F0;
  if (s == "F1") return FatigueDegradation::F1;
  if (s == "F2") return FatigueDegradation::F2;
  throw std::invalid_argument("fatigue.fdeg: must be F0, F1 or F2");
}

AccumulationRule parse_rule(const std::string& s) {
  if (s == "generalized") return AccumulationRule::GeneralizedOnePerCycle;
  if (s == "legacy_per_increment") return AccumulationRule::LegacyPerIncrement;
  if (s == "legacy_reformulated") return AccumulationRule::LegacyReformulated;
  if (s == "legacy_representative") return AccumulationRule::LegacyRepresentative;
  throw std::invalid_argument(
      "fatigue.accumulation: must be generalized, legacy_per_increment, "
      "legacy_reformulated or legacy_representative");
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
  json root = json::parse(json_text);

  // a manifest embeds the configuration under "config"
  if (root.is_object() && root.contains("tool") && root.contains("config"))
    root = root.at("config");

  check_keys(root, "",
             {"version", "solver", "material", "model", "split", "fatigue", "load",
              "mesh", "solver_options", "output", "threads", "seed"});

  RunConfig cfg;
  if (opt_number(root, "", "version", 1) != 1)
    throw std::invalid_argument("version: only version 1 is supported");

  cfg.solver = opt_string(root, "", "solver", "homogeneous");
  if (cfg.solver != "homogeneous" && cfg.solver != "fem")
    throw std::invalid_argument("solver: must be \"homogeneous\" or \"fem\"");

  cfg.model = parse_model(opt_string(root, "", "model", "AT1"));
  cfg.split = parse_split(opt_string(root, "", "split", "NoTension"));

  // material: preset name or explicit object
  const json* jm = find(root, "material");
  if (!jm) throw std::invalid_argument("material: required");
  if (jm->is_string()) {
    const auto& preset = preset_by_name(jm->get<std::string>());
    cfg.material_name = preset.name;
    cfg.mat = preset.material(cfg.model);
    cfg.sigma_e = preset.sigma_e;
    cfg.fp.alpha0 = preset.alpha0;
    cfg.fp.n = preset.n;
    cfg.fp.kappa = preset.kappa;
  } else if (jm->is_object()) {
    check_keys(*jm, "material.", {"E", "nu", "Gc", "ell", "sigma_e", "k_residual"});
    const double E = need_number(*jm, "material.", "E");
    const double nu = need_number(*jm, "material.", "nu");
    const double Gc = need_number(*jm, "material.", "Gc");
    const double ell = need_number(*jm, "material.", "ell");
    if (!(E > 0.0)) throw std::invalid_argument("material.E: must be > 0");
    if (!(nu > -1.0 && nu < 0.5))
      throw std::invalid_argument("material.nu: must satisfy -1 < nu < 0.5");
    if (!(Gc > 0.0)) throw std::invalid_argument("material.Gc: must be > 0");
    if (!(ell > 0.0)) throw std::invalid_argument("material.ell: must be > 0");
    cfg.mat = MaterialParams::make(E, nu, Gc, ell,
                                   opt_number(*jm, "material.", "k_residual", 1e-7));
    cfg.sigma_e = opt_number(*jm, "material.", "sigma_e", 0.0);
    cfg.material_name = "custom";
  } else {
    throw std::invalid_argument("material: must be a preset name or an object");
  }

  // fatigue
  if (const json* jf = find(root, "fatigue")) {
    check_keys(*jf, "fatigue.",
               {"fdeg", "alpha0", "n", "kappa", "alpha_e", "alpha_n", "accumulation"});
    cfg.fp.fdeg = parse_fdeg(opt_string(*jf, "fatigue.", "fdeg", "F2"));
    cfg.fp.alpha0 = opt_number(*jf, "fatigue.", "alpha0", cfg.fp.alpha0);
    cfg.fp.n = opt_number(*jf, "fatigue.", "n", cfg.fp.n);
    cfg.fp.kappa = opt_number(*jf, "fatigue.", "kappa", cfg.fp.kappa);
    cfg.fp.accumulation =
        parse_rule(opt_string(*jf, "fatigue.", "accumulation", "generalized"));
    cfg.fp.alpha_n = opt_number(*jf, "fatigue.", "alpha_n",
                                default_alpha_n(cfg.model, cfg.mat));
    cfg.fp.alpha_e = opt_number(*jf, "fatigue.", "alpha_e",
                                default_alpha_e(cfg.sigma_e, cfg.mat));
  } else {
    cfg.fp.alpha_n = default_alpha_n(cfg.model, cfg.mat);
    cfg.fp.alpha_e = default_alpha_e(cfg.sigma_e, cfg.mat);
  }
  try {
    cfg.fp.validate();
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("fatigue: ") + e.what());
  }

  // load program
  const json* jl = find(root, "load");
  if (!jl) throw std::invalid_argument("load: required");
  check_keys(*jl, "load.",
             {"control", "amplitude_kind", "amplitudes", "ratios", "max_cycles",
              "substeps_per_cycle"});
  const std::string control = opt_string(*jl, "load.", "control", "load");
  if (control == "load")
    cfg.control = ControlMode::Load;
  else if (control == "displacement")
    cfg.control = ControlMode::Displacement;
  else
    throw std::invalid_argument("load.control: must be \"load\" or \"displacement\"");
  const std::string kind = opt_string(*jl, "load.", "amplitude_kind", "amplitude");
  if (kind == "amplitude")
    cfg.amplitude_is_peak = false;
  else if (kind == "peak")
    cfg.amplitude_is_peak = true;
  else
    throw std::invalid_argument("load.amplitude_kind: must be \"amplitude\" or \"peak\"");
  const json* ja = find(*jl, "amplitudes");
  if (!ja || !ja->is_array() || ja->empty())
    throw std::invalid_argument("load.amplitudes: required non-empty array");
  for (const auto& a : *ja) {
    if (!a.is_number() || !(a.get<double>() > 0.0))
      throw std::invalid_argument("load.amplitudes: entries must be numbers > 0");
    cfg.amplitudes.push_back(a.get<double>());
  }
  if (const json* jr = find(*jl, "ratios")) {
    if (!jr->is_array() || jr->empty())
      throw std::invalid_argument("load.ratios: must be a non-empty array");
    for (const auto& r : *jr) {
      if (!r.is_number() || !(r.get<double>() < 1.0))
        throw std::invalid_argument("load.ratios: entries must be numbers < 1");
      cfg.ratios.push_back(r.get<double>());
    }
  } else {
    cfg.ratios = {-1.0};
  }
  const double mc = opt_number(*jl, "load.", "max_cycles", 1e7);
  if (!(mc >= 1.0)) throw std::invalid_argument("load.max_cycles: must be >= 1");
  cfg.max_cycles = std::uint64_t(mc);
  cfg.substeps_per_cycle = int(opt_number(*jl, "load.", "substeps_per_cycle", 1));
  if (cfg.substeps_per_cycle < 1)
    throw std::invalid_argument("load.substeps_per_cycle: must be >= 1");

  // mesh (fem only)
  if (const json* jx = find(root, "mesh")) {
    if (cfg.solver != "fem")
      throw std::invalid_argument("mesh: only valid for the fem solver");
    check_keys(*jx, "mesh.", {"geometry", "file", "ref_ratio"});
    cfg.ref_ratio = opt_number(*jx, "mesh.", "ref_ratio", 5.0);
    if (!(cfg.ref_ratio > 0.0))
      throw std::invalid_argument("mesh.ref_ratio: must be > 0");
    const json* jg = find(*jx, "geometry");
    cfg.mesh_file = opt_string(*jx, "mesh.", "file", "");
    if ((jg == nullptr) == cfg.mesh_file.empty())
      throw std::invalid_argument("mesh: exactly one of geometry or file is required");
    if (jg) {
      check_keys(*jg, "mesh.geometry.", {"D", "d", "rho", "groove_angle", "length"});
      NotchGeometry g;
      g.D = need_number(*jg, "mesh.geometry.", "D");
      g.d = need_number(*jg, "mesh.geometry.", "d");
      g.rho = need_number(*jg, "mesh.geometry.", "rho");
      g.groove_angle_deg = opt_number(*jg, "mesh.geometry.", "groove_angle", 60.0);
      g.length = opt_number(*jg, "mesh.geometry.", "length", 0.0);
      try {
        g.validate();
      } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("mesh.geometry: ") + e.what());
      }
      cfg.geometry = g;
    }
  } else if (cfg.solver == "fem") {
    throw std::invalid_argument("mesh: required for the fem solver");
  }

  if (const json* js = find(root, "solver_options")) {
    check_keys(*js, "solver_options.",
               {"phi_init_threshold", "phi_fail", "tol_rel", "max_iter",
                "refresh_every", "verbosity"});
    cfg.phi_init_threshold =
        opt_number(*js, "solver_options.", "phi_init_threshold", 1e-3);
    cfg.phi_fail = opt_number(*js, "solver_options.", "phi_fail", 0.95);
    cfg.fem_options.tol_rel = opt_number(*js, "solver_options.", "tol_rel", 1e-9);
    cfg.fem_options.max_iter = int(opt_number(*js, "solver_options.", "max_iter", 400));
    cfg.fem_options.refresh_every =
        int(opt_number(*js, "solver_options.", "refresh_every", 50));
    cfg.fem_options.verbosity = int(opt_number(*js, "solver_options.", "verbosity", 0));
  }

  if (const json* jo = find(root, "output")) {
    check_keys(*jo, "output.", {"dir", "write_vtk", "vtk_every", "trace"});
    cfg.output.dir = opt_string(*jo, "output.", "dir", "out");
    cfg.output.write_vtk = opt_bool(*jo, "output.", "write_vtk", false);
    cfg.output.vtk_every = std::uint64_t(opt_number(*jo, "output.", "vtk_every", 0));
    cfg.output.trace = opt_bool(*jo, "output.", "trace", false);
  }

  cfg.threads = int(opt_number(root, "", "threads", 0));
  cfg.seed = std::uint64_t(opt_number(root, "", "seed", 0));
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open configuration file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return parse_run_config(text);
}

std::string run_config_json(const RunConfig& cfg) {
  json j;
  j["version"] = cfg.version;
  j["solver"] = cfg.solver;
  if (cfg.material_name != "custom") {
    j["material"] = cfg.material_name;
  } else {
    j["material"] = {{"E", cfg.mat.E},     {"nu", cfg.mat.nu},
                     {"Gc", cfg.mat.Gc},   {"ell", cfg.mat.ell},
                     {"sigma_e", cfg.sigma_e}, {"k_residual", cfg.mat.k_residual}};
  }
  j["model"] = to_string(cfg.model);
  j["split"] = to_string(cfg.split);
  j["fatigue"] = {{"fdeg", to_string(cfg.fp.fdeg)},
                  {"alpha0", cfg.fp.alpha0},
                  {"n", cfg.fp.n},
                  {"kappa", cfg.fp.kappa},
                  {"alpha_e", cfg.fp.alpha_e},
                  {"alpha_n", cfg.fp.alpha_n},
                  {"accumulation", to_string(cfg.fp.accumulation)}};
  j["load"] = {{"control", to_string(cfg.control)},
               {"amplitude_kind", cfg.amplitude_is_peak ? "peak" : "amplitude"},
               {"amplitudes", cfg.amplitudes},
               {"ratios", cfg.ratios},
               {"max_cycles", cfg.max_cycles},
               {"substeps_per_cycle", cfg.substeps_per_cycle}};
  if (cfg.solver == "fem") {
    json jm;
    jm["ref_ratio"] = cfg.ref_ratio;
    if (cfg.geometry) {
      jm["geometry"] = {{"D", cfg.geometry->D},
                        {"d", cfg.geometry->d},
                        {"rho", cfg.geometry->rho},
                        {"groove_angle", cfg.geometry->groove_angle_deg},
                        {"length", cfg.geometry->length}};
    } else {
      jm["file"] = cfg.mesh_file;
    }
    j["mesh"] = jm;
  }
  j["solver_options"] = {{"phi_init_threshold", cfg.phi_init_threshold},
                         {"phi_fail", cfg.phi_fail},
                         {"tol_rel", cfg.fem_options.tol_rel},
                         {"max_iter", cfg.fem_options.max_iter},
                         {"refresh_every", cfg.fem_options.refresh_every},
                         {"verbosity", cfg.fem_options.verbosity}};
  j["output"] = {{"dir", cfg.output.dir},
                 {"write_vtk", cfg.output.write_vtk},
                 {"vtk_every", cfg.output.vtk_every},
                 {"trace", cfg.output.trace}};
  j["threads"] = cfg.threads;
  j["seed"] = cfg.seed;
  return j.dump(1);
}

Campaign to_campaign(const RunConfig& cfg) {
  Campaign c;
  c.material_name = cfg.material_name;
  c.mat = cfg.mat;
  c.model = cfg.model;
  c.split = cfg.split;
  c.fp = cfg.fp;
  c.control = cfg.control;
  c.amplitude_is_peak = cfg.amplitude_is_peak;
  c.amplitudes = cfg.amplitudes;
  c.ratios = cfg.ratios;
  c.max_cycles = cfg.max_cycles;
  c.substeps_per_cycle = cfg.substeps_per_cycle;
  c.threads = cfg.threads;
  c.hopts.phi_init_threshold = cfg.phi_init_threshold;
  c.hopts.phi_fail = cfg.phi_fail;
  c.hopts.record_trace = cfg.output.trace;

  if (cfg.solver == "fem") {
    auto spec = std::make_shared<FemCampaignSpec>();
    spec->mesh = cfg.geometry ? generate_notched_mesh(*cfg.geometry, cfg.mat.ell,
                                                      cfg.ref_ratio)
                              : read_mesh_file(cfg.mesh_file);
    spec->traction_scale =
        cfg.geometry && cfg.control == ControlMode::Load
            ? cfg.geometry->net_to_gross_area()
            : 1.0;
    spec->options = cfg.fem_options;
    spec->fatigue_options.phi_init_threshold = cfg.phi_init_threshold;
    spec->fatigue_options.phi_fail = cfg.phi_fail;
    spec->fatigue_options.record_trace = cfg.output.trace;
    if (cfg.output.write_vtk) {
      spec->fatigue_options.vtk_dir = cfg.output.dir + "/vtk";
      spec->fatigue_options.vtk_every = cfg.output.vtk_every;
    }
    c.fem = spec;
  }
  return c;
}

std::string tool_version() { return "pffat 1.0.0"; }

}  // namespace pff
