#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pff/fem/band_matrix.hpp"
#include "pff/fem/mesh.hpp"
#include "pff/homogeneous.hpp"

namespace pff {

/// Evolving state of one integration point.
struct PointState {
  double H_raw = 0.0;  ///< running maximum of the active energy density
  FatigueState fs;
};

struct FemOptions {
  double tol_rel = 1e-9;
  int max_iter = 400;
  int refresh_every = 50;  ///< rebuild + refactor the initial operator
  int max_backtracks = 4;
  int verbosity = 0;
};

struct BfgsReport {
  bool converged = false;
  int iterations = 0;
  int refactorizations = 0;
};

/// Coupled displacement / phase field problem on an axisymmetric mesh with
/// full 2x2 integration. The displacement block always uses the fully
/// degraded isotropic stiffness; the energy split only feeds the damage
/// driving force. Boundary conditions: u_r = 0 on the axis, u_z = 0 on the
/// symmetry plane, and either an axial traction or a prescribed axial
/// displacement on the top face.
class FemProblem {
 public:
  FemProblem(Mesh mesh, const MaterialParams& mat, PfModel model, SplitKind split,
             const FatigueParams& fp, FemOptions opts = {});

  const Mesh& mesh() const { return mesh_; }
  const MaterialParams& material() const { return mat_; }
  PfModel model() const { return model_; }
  SplitKind split() const { return split_; }
  const FatigueParams& fatigue() const { return fp_; }
  int n_nodes() const { return mesh_.n_nodes(); }
  int n_ips() const { return 4 * mesh_.n_elems(); }

  std::vector<PointState>& states() { return states_; }
  const std::vector<PointState>& states() const { return states_; }

  /// Nodal lower bound on phi (the committed field of the previous cycle);
  /// the solve clamps iterates to [floor, 1] and treats floor-pinned nodes
  /// with positive residual as converged (active constraint).
  void set_phi_floor(const std::vector<double>& floor);

  /// Freezes per-point toughness factors f(alpha_bar) for the coming cycle.
  void freeze_cycle_toughness();

  void set_traction(double tz);
  void set_top_displacement(double uz);

  struct System {
    std::vector<double> r_u;
    std::vector<double> r_phi;
    BandMatrix K_u;
    BandMatrix K_phi;
  };

  /// Residuals (internal minus external) and consistent tangents at the
  /// given nodal fields. apply_bc masks constrained rows and sets identity
  /// rows in the matrices.
  System assemble(const std::vector<double>& u, const std::vector<double>& phi,
                  bool with_matrices, bool apply_bc) const;

  /// Monolithic quasi-Newton solve of the coupled system, updating u and phi
  /// in place. The initial operator is the factorized block tangent,
  /// refreshed per FemOptions.
  BfgsReport solve(std::vector<double>& u, std::vector<double>& phi);

  struct IpField {
    Sym3 eps;
    double psi_plus = 0.0;
    double phi = 0.0;
  };
  IpField ip_field(const std::vector<double>& u, const std::vector<double>& phi,
                   int elem, int ip) const;

  /// Axial stress extrapolated to a node from the elements sharing it.
  double axial_stress_at_node(const std::vector<double>& u,
                              const std::vector<double>& phi, int node) const;

  const FemOptions& options() const { return opts_; }

 private:
  friend struct FemAssembler;

  Mesh mesh_;
  MaterialParams mat_;
  PfModel model_;
  SplitKind split_;
  FatigueParams fp_;
  FemOptions opts_;

  struct IpData {
    double N[4];
    double dNr[4];
    double dNz[4];
    double r;
    double w;  ///< 2 pi r detJ * gauss weight
  };
  std::vector<IpData> ipdata_;         // 4 per element
  std::vector<PointState> states_;
  std::vector<double> f_frozen_;       // per IP

  std::vector<char> fixed_u_;          // per u dof
  std::vector<double> fixed_value_;    // prescribed values
  std::vector<double> phi_lower_;      // irreversibility floor per node
  std::vector<int> top_u_dofs_;        // axial dofs of the top face
  double traction_ = 0.0;
  bool displacement_control_ = false;

  int bw_u_ = 0, bw_phi_ = 0;
  double ru_ref_ = 0.0;     // residual scale memory across solves
  double rphi_ref_ = 0.0;
  double rphi_scale_ = 0.0;  // physical scale of the phi equation
};

struct FemCycleRecord {
  std::uint64_t cycle = 0;
  double max_phi = 0.0;
  double max_alpha_bar = 0.0;
};

struct FemFatigueOptions {
  double phi_init_threshold = 1e-3;
  double phi_fail = 0.95;
  bool record_trace = true;
  std::string vtk_dir;          ///< empty = no snapshots
  std::uint64_t vtk_every = 0;  ///< additionally every N cycles when > 0
};

struct FemLifeResult {
  std::optional<std::uint64_t> N_i;
  std::optional<std::uint64_t> N_f;
  bool runout = false;
  std::string failure_mode;  ///< "divergence" or "severance"
  std::vector<FemCycleRecord> trace;
  std::vector<double> u;    ///< final displacement field
  std::vector<double> phi;  ///< final phase field
};

/// Cycle-by-cycle fatigue of the meshed specimen under the proportional load
/// program. Load control: amplitude is the axial traction on the top face.
/// Displacement control: amplitude is the prescribed mean axial strain
/// (top displacement over specimen height). One monolithic solve per cycle
/// at the representative peak; the valley follows per point by elastic
/// proportionality, or by a second solve when substeps_per_cycle > 1.
FemLifeResult run_fatigue_fem(FemProblem& pb, const CycleLoad& load,
                              const FemFatigueOptions& fopts = {});

/// Elastic stress concentration factor of a notched problem: axial root
/// stress over the net-section nominal stress, from a pristine solve.
double elastic_scf(const NotchGeometry& geom, const MaterialParams& mat,
                   double ref_ratio);

}  // namespace pff
