#pragma once

#include <optional>
#include <string>

#include "pff/fem/mesh.hpp"
#include "pff/fem/solver.hpp"
#include "pff/study.hpp"

namespace pff {

struct OutputConfig {
  std::string dir = "out";
  bool write_vtk = false;
  std::uint64_t vtk_every = 0;
  bool trace = false;
};

/// Fully resolved run description. Parsed from a strict JSON schema: unknown
/// keys are rejected by name, range violations name the offending field.
/// Unit convention: N, mm, MPa; Gc in N/mm (= kJ/m^2).
struct RunConfig {
  int version = 1;
  std::string solver = "homogeneous";  ///< "homogeneous" or "fem"
  std::string material_name = "custom";
  MaterialParams mat;
  double sigma_e = 0.0;
  PfModel model = PfModel::AT1;
  SplitKind split = SplitKind::NoTension;
  FatigueParams fp;
  ControlMode control = ControlMode::Load;
  bool amplitude_is_peak = false;
  std::vector<double> amplitudes;
  std::vector<double> ratios;
  std::uint64_t max_cycles = 10'000'000;
  int substeps_per_cycle = 1;

  // fem solver inputs
  std::optional<NotchGeometry> geometry;
  std::string mesh_file;  ///< alternative to geometry
  double ref_ratio = 5.0;
  FemOptions fem_options;

  double phi_init_threshold = 1e-3;
  double phi_fail = 0.95;

  OutputConfig output;
  int threads = 0;
  std::uint64_t seed = 0;
};

/// Parses and validates a configuration (or a run manifest, which embeds the
/// configuration under "config"). Throws std::invalid_argument with the
/// offending key path on schema errors.
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);

/// Resolved configuration echo used for the manifest and for re-runs.
std::string run_config_json(const RunConfig& cfg);

/// Campaign view of a homogeneous-solver configuration.
Campaign to_campaign(const RunConfig& cfg);

std::string tool_version();

}  // namespace pff
