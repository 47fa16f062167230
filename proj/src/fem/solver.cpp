#include "pff/fem/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <stdexcept>

#include "pff/fem/vtk.hpp"

namespace pff {

namespace {

constexpr double kGauss = 0.5773502691896258;  // 1/sqrt(3)
const double kGp[4][2] = {{-kGauss, -kGauss},
                          {kGauss, -kGauss},
                          {kGauss, kGauss},
                          {-kGauss, kGauss}};
const double kCorner[4][2] = {{-1, -1}, {1, -1}, {1, 1}, {-1, 1}};

double clamp01(double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); }

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

FemProblem::FemProblem(Mesh mesh, const MaterialParams& mat, PfModel model,
                       SplitKind split, const FatigueParams& fp, FemOptions opts)
    : mesh_(std::move(mesh)),
      mat_(mat),
      model_(model),
      split_(split),
      fp_(fp),
      opts_(opts) {
  fp_.validate();
  const int ne = mesh_.n_elems();
  const int nn = mesh_.n_nodes();
  ipdata_.resize(std::size_t(ne) * 4);
  states_.assign(std::size_t(ne) * 4, PointState{});
  f_frozen_.assign(std::size_t(ne) * 4, 1.0);

  for (int e = 0; e < ne; ++e) {
    const auto& conn = mesh_.elems[e];
    for (int q = 0; q < 4; ++q) {
      const double xi = kGp[q][0], eta = kGp[q][1];
      double N[4], dNxi[4][2];
      for (int a = 0; a < 4; ++a) {
        N[a] = 0.25 * (1 + kCorner[a][0] * xi) * (1 + kCorner[a][1] * eta);
        dNxi[a][0] = 0.25 * kCorner[a][0] * (1 + kCorner[a][1] * eta);
        dNxi[a][1] = 0.25 * kCorner[a][1] * (1 + kCorner[a][0] * xi);
      }
      double J[2][2] = {{0, 0}, {0, 0}};
      for (int a = 0; a < 4; ++a) {
        const auto& X = mesh_.nodes[conn[a]];
        J[0][0] += dNxi[a][0] * X[0];
        J[0][1] += dNxi[a][0] * X[1];
        J[1][0] += dNxi[a][1] * X[0];
        J[1][1] += dNxi[a][1] * X[1];
      }
      const double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
      if (!(det > 0.0))
        throw std::runtime_error("FemProblem: non-positive element Jacobian");
      const double inv[2][2] = {{J[1][1] / det, -J[0][1] / det},
                                {-J[1][0] / det, J[0][0] / det}};
      IpData& ip = ipdata_[std::size_t(e) * 4 + q];
      double r = 0.0;
      for (int a = 0; a < 4; ++a) {
        ip.N[a] = N[a];
        ip.dNr[a] = inv[0][0] * dNxi[a][0] + inv[0][1] * dNxi[a][1];
        ip.dNz[a] = inv[1][0] * dNxi[a][0] + inv[1][1] * dNxi[a][1];
        r += N[a] * mesh_.nodes[conn[a]][0];
      }
      if (!(r > 0.0))
        throw std::runtime_error("FemProblem: integration point at non-positive radius");
      ip.r = r;
      ip.w = 2.0 * std::numbers::pi * r * det;  // unit gauss weight
    }
  }

  // bandwidths from connectivity
  int span = 0;
  for (const auto& conn : mesh_.elems)
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) span = std::max(span, std::abs(conn[a] - conn[b]));
  bw_phi_ = span;
  bw_u_ = 2 * span + 1;

  fixed_u_.assign(std::size_t(2) * nn, 0);
  fixed_value_.assign(std::size_t(2) * nn, 0.0);
  phi_lower_.assign(nn, 0.0);
  for (int n : mesh_.set("axis")) fixed_u_[2 * n] = 1;
  for (int n : mesh_.set("symmetry")) fixed_u_[2 * n + 1] = 1;
  for (int n : mesh_.set("top")) top_u_dofs_.push_back(2 * n + 1);

  // Natural force scale of the phi equation: the crack-resistance term of
  // one nodal volume. A pristine body has a vanishing phi residual, so the
  // convergence test needs a physical reference rather than the observed one.
  double volume = 0.0;
  for (const auto& ip : ipdata_) volume += ip.w;
  rphi_scale_ = mat_.Gc / (4.0 * cw_constant(model_) * mat_.ell) * volume / nn;
}

void FemProblem::set_phi_floor(const std::vector<double>& floor) {
  if (int(floor.size()) != mesh_.n_nodes())
    throw std::invalid_argument("set_phi_floor: size mismatch");
  phi_lower_ = floor;
}

void FemProblem::freeze_cycle_toughness() {
  for (std::size_t i = 0; i < states_.size(); ++i)
    f_frozen_[i] = fatigue_degradation(fp_.fdeg, states_[i].fs.alpha_bar, fp_.alpha0);
}

void FemProblem::set_traction(double tz) {
  traction_ = tz;
  if (displacement_control_) {
    for (int d : top_u_dofs_) {
      fixed_u_[d] = 0;
      fixed_value_[d] = 0.0;
    }
    displacement_control_ = false;
  }
}

void FemProblem::set_top_displacement(double uz) {
  traction_ = 0.0;
  displacement_control_ = true;
  for (int d : top_u_dofs_) {
    fixed_u_[d] = 1;
    fixed_value_[d] = uz;
  }
}

FemProblem::System FemProblem::assemble(const std::vector<double>& u,
                                        const std::vector<double>& phi,
                                        bool with_matrices, bool apply_bc) const {
  const int nn = mesh_.n_nodes();
  System sys{std::vector<double>(std::size_t(2) * nn, 0.0),
             std::vector<double>(nn, 0.0),
             with_matrices ? BandMatrix(2 * nn, bw_u_) : BandMatrix(),
             with_matrices ? BandMatrix(nn, bw_phi_) : BandMatrix()};

  const double lam = mat_.lambda, mu = mat_.mu, k = mat_.k_residual;
  const double Gc = mat_.Gc, ell = mat_.ell;
  const double cw = cw_constant(model_);
  const double Hmin = history_threshold(mat_);
  const double Hguard = 1e-12 * Gc / ell;  // keeps the phi block definite

  for (int e = 0; e < mesh_.n_elems(); ++e) {
    const auto& conn = mesh_.elems[e];
    for (int q = 0; q < 4; ++q) {
      const IpData& ip = ipdata_[std::size_t(e) * 4 + q];
      const double f = f_frozen_[std::size_t(e) * 4 + q];

      double err = 0, ezz = 0, ett = 0, grz = 0, phi_ip = 0, gpr = 0, gpz = 0;
      for (int a = 0; a < 4; ++a) {
        const double ur = u[2 * conn[a]], uz = u[2 * conn[a] + 1];
        err += ip.dNr[a] * ur;
        ezz += ip.dNz[a] * uz;
        ett += ip.N[a] / ip.r * ur;
        grz += ip.dNz[a] * ur + ip.dNr[a] * uz;
        phi_ip += ip.N[a] * phi[conn[a]];
        gpr += ip.dNr[a] * phi[conn[a]];
        gpz += ip.dNz[a] * phi[conn[a]];
      }
      phi_ip = clamp01(phi_ip);

      const Sym3 eps3{err, ezz, ett, 0.5 * grz, 0.0, 0.0};
      const double psi_plus = split_energy(eps3, mat_, split_).plus;
      double H = std::max(states_[std::size_t(e) * 4 + q].H_raw, psi_plus);
      if (model_ == PfModel::AT1) H = std::max(H, f * Hmin);

      const double g = degrade(phi_ip);
      const double gk = g + k;
      const double g1 = degrade_d1(phi_ip);
      const auto wf = geometric_crack(model_, phi_ip);

      const double tr = err + ezz + ett;
      const double s_rr = lam * tr + 2.0 * mu * err;
      const double s_zz = lam * tr + 2.0 * mu * ezz;
      const double s_tt = lam * tr + 2.0 * mu * ett;
      const double s_rz = mu * grz;

      for (int a = 0; a < 4; ++a) {
        const int A = conn[a];
        sys.r_u[2 * A] += ip.w * gk *
                          (ip.dNr[a] * s_rr + (ip.N[a] / ip.r) * s_tt + ip.dNz[a] * s_rz);
        sys.r_u[2 * A + 1] += ip.w * gk * (ip.dNz[a] * s_zz + ip.dNr[a] * s_rz);
        sys.r_phi[A] +=
            ip.w * (g1 * ip.N[a] * H +
                    f * Gc / (4.0 * cw) *
                        ((wf.w1 / ell) * ip.N[a] +
                         2.0 * ell * (ip.dNr[a] * gpr + ip.dNz[a] * gpz)));
      }

      if (with_matrices) {
        // the guard keeps the phi block definite at unstrained, fully
        // fatigued points without touching the equations themselves
        const double kphi_nn = degrade_d2(phi_ip) * std::max(H, Hguard) +
                               f * Gc * wf.w2 / (4.0 * cw * ell);
        const double kphi_bb = f * Gc * ell / (2.0 * cw);
        for (int a = 0; a < 4; ++a) {
          const int A = conn[a];
          for (int b = 0; b < 4; ++b) {
            const int B = conn[b];
            if (B > A) continue;  // symmetric: assemble the lower triangle once
            // displacement block: unit strains of u_r[b] and u_z[b]
            const double trb_r = ip.dNr[b] + ip.N[b] / ip.r;
            const double srr_r = lam * trb_r + 2.0 * mu * ip.dNr[b];
            const double szz_r = lam * trb_r;
            const double stt_r = lam * trb_r + 2.0 * mu * ip.N[b] / ip.r;
            const double srz_r = mu * ip.dNz[b];
            const double trb_z = ip.dNz[b];
            const double srr_z = lam * trb_z;
            const double szz_z = lam * trb_z + 2.0 * mu * ip.dNz[b];
            const double stt_z = lam * trb_z;
            const double srz_z = mu * ip.dNr[b];

            const double krr = ip.dNr[a] * srr_r + (ip.N[a] / ip.r) * stt_r +
                               ip.dNz[a] * srz_r;
            const double krz = ip.dNr[a] * srr_z + (ip.N[a] / ip.r) * stt_z +
                               ip.dNz[a] * srz_z;
            const double kzr = ip.dNz[a] * szz_r + ip.dNr[a] * srz_r;
            const double kzz = ip.dNz[a] * szz_z + ip.dNr[a] * srz_z;

            const double s = ip.w * gk;
            if (A == B) {
              sys.K_u.add(2 * A, 2 * B, s * krr);
              sys.K_u.add(2 * A + 1, 2 * B, s * kzr);
              sys.K_u.add(2 * A + 1, 2 * B + 1, s * kzz);
            } else {
              sys.K_u.add(2 * A, 2 * B, s * krr);
              sys.K_u.add(2 * A, 2 * B + 1, s * krz);
              sys.K_u.add(2 * A + 1, 2 * B, s * kzr);
              sys.K_u.add(2 * A + 1, 2 * B + 1, s * kzz);
            }
            sys.K_phi.add(A, B,
                          ip.w * (kphi_nn * ip.N[a] * ip.N[b] +
                                  kphi_bb * (ip.dNr[a] * ip.dNr[b] +
                                             ip.dNz[a] * ip.dNz[b])));
          }
        }
      }
    }
  }

  // consistent axial traction on the loaded face
  if (traction_ != 0.0) {
    for (const auto& edge : mesh_.top_edges) {
      const double r0 = mesh_.nodes[edge[0]][0], r1 = mesh_.nodes[edge[1]][0];
      const double h = std::abs(r1 - r0);
      const double c = 2.0 * std::numbers::pi * traction_ * h / 6.0;
      sys.r_u[2 * edge[0] + 1] -= c * (2.0 * r0 + r1);
      sys.r_u[2 * edge[1] + 1] -= c * (r0 + 2.0 * r1);
    }
  }

  if (apply_bc) {
    for (int d = 0; d < 2 * nn; ++d) {
      if (!fixed_u_[d]) continue;
      sys.r_u[d] = 0.0;
      if (with_matrices) sys.K_u.set_identity_row(d);
    }
  }
  return sys;
}

BfgsReport FemProblem::solve(std::vector<double>& u, std::vector<double>& phi) {
  const int nn = mesh_.n_nodes();
  const int nu = 2 * nn;
  BfgsReport rep;

  for (int d = 0; d < nu; ++d)
    if (fixed_u_[d]) u[d] = fixed_value_[d];

  // Bound constraints on phi are handled with an active set frozen between
  // operator refreshes: a node pinned at its irreversibility floor with
  // positive residual (or fully broken with negative residual) is a
  // satisfied constraint. Active nodes get zeroed residual entries and an
  // identity row in the phi tangent, so quasi-Newton directions leave them
  // exactly in place instead of chattering against the clamp.
  std::vector<char> act(nn, 0);
  auto update_active = [&](const std::vector<double>& rphi_vec) {
    for (int n = 0; n < nn; ++n)
      act[n] = (phi[n] <= phi_lower_[n] + 1e-14 && rphi_vec[n] > 0.0) ||
               (phi[n] >= 1.0 - 1e-14 && rphi_vec[n] < 0.0);
  };
  auto apply_active = [&](System& s, bool with_matrices) {
    for (int n = 0; n < nn; ++n) {
      if (!act[n]) continue;
      s.r_phi[n] = 0.0;
      if (with_matrices) s.K_phi.set_identity_row(n);
    }
  };

  System sys = assemble(u, phi, true, true);
  update_active(sys.r_phi);
  apply_active(sys, true);
  if (!sys.K_u.factorize() || !sys.K_phi.factorize()) return rep;
  rep.refactorizations = 1;

  double ru = inf_norm(sys.r_u), rphi = inf_norm(sys.r_phi);
  ru_ref_ = std::max(ru_ref_, ru);
  rphi_ref_ = std::max(rphi_ref_, rphi);
  const double thr_u = opts_.tol_rel * ru_ref_ + 1e-300;
  const double thr_phi = opts_.tol_rel * std::max(rphi_ref_, rphi_scale_) + 1e-300;

  // Combined scaled error: an L2 blend lets a phi-improving step pass even
  // when it perturbs the (linear, cheaply re-solved) displacement residual.
  auto error_of = [&](double a, double b) {
    const double x = a / thr_u, y = b / thr_phi;
    return std::sqrt(x * x + y * y);
  };
  double err = error_of(ru, rphi);

  struct Pair {
    std::vector<double> s, y;
    double rho;
  };
  std::vector<Pair> pairs;

  std::vector<double> r(std::size_t(nu) + nn);
  auto pack = [&](const System& s) {
    std::copy(s.r_u.begin(), s.r_u.end(), r.begin());
    std::copy(s.r_phi.begin(), s.r_phi.end(), r.begin() + nu);
  };
  pack(sys);

  std::vector<double> dir(r.size()), tmp_u(nu), tmp_phi(nn);

  double best_err = err;
  int last_progress = 0;

  for (int it = 1; it <= opts_.max_iter; ++it) {
    if (ru <= thr_u && rphi <= thr_phi) {
      rep.converged = true;
      rep.iterations = it - 1;
      return rep;
    }

    // two-loop recursion with the factorized block tangent as seed operator
    dir = r;
    std::vector<double> alpha(pairs.size());
    for (int p = int(pairs.size()) - 1; p >= 0; --p) {
      double sa = 0.0;
      for (std::size_t i = 0; i < dir.size(); ++i) sa += pairs[p].s[i] * dir[i];
      alpha[p] = pairs[p].rho * sa;
      for (std::size_t i = 0; i < dir.size(); ++i)
        dir[i] -= alpha[p] * pairs[p].y[i];
    }
    std::copy(dir.begin(), dir.begin() + nu, tmp_u.begin());
    std::copy(dir.begin() + nu, dir.end(), tmp_phi.begin());
    sys.K_u.solve(tmp_u);
    sys.K_phi.solve(tmp_phi);
    std::copy(tmp_u.begin(), tmp_u.end(), dir.begin());
    std::copy(tmp_phi.begin(), tmp_phi.end(), dir.begin() + nu);
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      double yb = 0.0;
      for (std::size_t i = 0; i < dir.size(); ++i) yb += pairs[p].y[i] * dir[i];
      const double beta = pairs[p].rho * yb;
      for (std::size_t i = 0; i < dir.size(); ++i)
        dir[i] += (alpha[p] - beta) * pairs[p].s[i];
    }

    const std::vector<double> u_old = u, phi_old = phi, r_old = r;
    double lam = 1.0;
    double ru_new = 0.0, rphi_new = 0.0;
    for (int bt = 0;; ++bt) {
      for (int d = 0; d < nu; ++d)
        if (!fixed_u_[d]) u[d] = u_old[d] - lam * dir[d];
      for (int n = 0; n < nn; ++n)
        phi[n] = std::min(1.0, std::max(phi_lower_[n], phi_old[n] - lam * dir[nu + n]));
      System rs = assemble(u, phi, false, true);
      apply_active(rs, false);
      ru_new = inf_norm(rs.r_u);
      rphi_new = inf_norm(rs.r_phi);
      const double err_new = error_of(ru_new, rphi_new);
      if (std::isfinite(err_new) && (err_new <= err || bt >= opts_.max_backtracks)) {
        pack(rs);
        err = err_new;
        break;
      }
      if (bt >= opts_.max_backtracks) {
        // state blew up beyond repair: restore and report failure
        u = u_old;
        phi = phi_old;
        return rep;
      }
      lam *= 0.5;
    }
    ru = ru_new;
    rphi = rphi_new;
    rep.iterations = it;
    if (opts_.verbosity > 1)
      std::fprintf(stderr, "    it %3d lam %.3g ru %.3e (thr %.1e) rphi %.3e (thr %.1e)\n",
                   it, lam, ru, thr_u, rphi, thr_phi);

    // curvature-guarded update pair
    Pair pr;
    pr.s.resize(r.size());
    pr.y.resize(r.size());
    double ys = 0.0, ss = 0.0, yy = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      const double si = (i < std::size_t(nu) ? u[i] - u_old[i] : phi[i - nu] - phi_old[i - nu]);
      const double yi = r[i] - r_old[i];
      pr.s[i] = si;
      pr.y[i] = yi;
      ys += si * yi;
      ss += si * si;
      yy += yi * yi;
    }
    if (ys > 1e-10 * std::sqrt(ss * yy)) {
      pr.rho = 1.0 / ys;
      pairs.push_back(std::move(pr));
    }

    if (err < 0.7 * best_err) {
      best_err = err;
      last_progress = it;
    }

    // refresh the factorized tangent periodically or whenever the low-rank
    // updates stop making progress (active-set changes stale the operator)
    if (it % opts_.refresh_every == 0 || it - last_progress >= 8) {
      sys = assemble(u, phi, true, true);
      update_active(sys.r_phi);
      apply_active(sys, true);
      if (!sys.K_u.factorize() || !sys.K_phi.factorize()) return rep;
      ++rep.refactorizations;
      pairs.clear();
      pack(sys);
      ru = inf_norm(sys.r_u);
      rphi = inf_norm(sys.r_phi);
      err = error_of(ru, rphi);
      best_err = std::min(best_err, err);
      last_progress = it;
    }
  }
  rep.converged = (ru <= thr_u && rphi <= thr_phi);
  if (!rep.converged && opts_.verbosity > 0)
    std::fprintf(stderr,
                 "  solve: no convergence after %d its: ru %.3e (thr %.1e) "
                 "rphi %.3e (thr %.1e)\n",
                 rep.iterations, ru, thr_u, rphi, thr_phi);
  return rep;
}

FemProblem::IpField FemProblem::ip_field(const std::vector<double>& u,
                                         const std::vector<double>& phi, int elem,
                                         int q) const {
  const auto& conn = mesh_.elems[elem];
  const IpData& ip = ipdata_[std::size_t(elem) * 4 + q];
  double err = 0, ezz = 0, ett = 0, grz = 0, phi_ip = 0;
  for (int a = 0; a < 4; ++a) {
    const double ur = u[2 * conn[a]], uz = u[2 * conn[a] + 1];
    err += ip.dNr[a] * ur;
    ezz += ip.dNz[a] * uz;
    ett += ip.N[a] / ip.r * ur;
    grz += ip.dNz[a] * ur + ip.dNr[a] * uz;
    phi_ip += ip.N[a] * phi[conn[a]];
  }
  IpField out;
  out.eps = Sym3{err, ezz, ett, 0.5 * grz, 0.0, 0.0};
  out.psi_plus = split_energy(out.eps, mat_, split_).plus;
  out.phi = clamp01(phi_ip);
  return out;
}

double FemProblem::axial_stress_at_node(const std::vector<double>& u,
                                        const std::vector<double>& phi,
                                        int node) const {
  double sum = 0.0;
  int count = 0;
  for (int e = 0; e < mesh_.n_elems(); ++e) {
    const auto& conn = mesh_.elems[e];
    int local = -1;
    for (int a = 0; a < 4; ++a)
      if (conn[a] == node) local = a;
    if (local < 0) continue;
    double szz_ip[4];
    for (int q = 0; q < 4; ++q) {
      const auto f = ip_field(u, phi, e, q);
      const double tr = f.eps.trace();
      szz_ip[q] = (degrade(f.phi) + mat_.k_residual) *
                  (mat_.lambda * tr + 2.0 * mat_.mu * f.eps.yy);
    }
    // bilinear extrapolation from the gauss grid to the corner
    const double X = kCorner[local][0] * std::sqrt(3.0);
    const double Y = kCorner[local][1] * std::sqrt(3.0);
    double v = 0.0;
    for (int q = 0; q < 4; ++q)
      v += 0.25 * (1 + kCorner[q][0] * X) * (1 + kCorner[q][1] * Y) * szz_ip[q];
    sum += v;
    ++count;
  }
  if (count == 0) throw std::invalid_argument("axial_stress_at_node: detached node");
  return sum / count;
}

namespace {

/// Connected components of elements whose average phase field exceeds the
/// failure level; the net section is severed when one component touches both
/// the axis and the outer surface.
bool section_severed(const Mesh& mesh, const std::vector<double>& phi, double level) {
  const int ne = mesh.n_elems();
  std::vector<char> broken(ne, 0);
  bool any = false;
  for (int e = 0; e < ne; ++e) {
    double avg = 0.0;
    for (int a : mesh.elems[e]) avg += phi[a];
    if (avg * 0.25 > level) {
      broken[e] = 1;
      any = true;
    }
  }
  if (!any) return false;

  std::vector<char> on_axis(mesh.n_nodes(), 0), on_surface(mesh.n_nodes(), 0);
  for (int n : mesh.set("axis")) on_axis[n] = 1;
  for (int n : mesh.set("surface")) on_surface[n] = 1;

  // node -> broken elements adjacency
  std::vector<std::vector<int>> node_elems(mesh.n_nodes());
  for (int e = 0; e < ne; ++e)
    if (broken[e])
      for (int a : mesh.elems[e]) node_elems[a].push_back(e);

  std::vector<int> comp(ne, -1);
  for (int seed = 0; seed < ne; ++seed) {
    if (!broken[seed] || comp[seed] >= 0) continue;
    bool axis_hit = false, surface_hit = false;
    std::vector<int> stack{seed};
    comp[seed] = seed;
    while (!stack.empty()) {
      const int e = stack.back();
      stack.pop_back();
      for (int a : mesh.elems[e]) {
        if (on_axis[a]) axis_hit = true;
        if (on_surface[a]) surface_hit = true;
        for (int other : node_elems[a]) {
          if (comp[other] < 0) {
            comp[other] = seed;
            stack.push_back(other);
          }
        }
      }
    }
    if (axis_hit && surface_hit) return true;
  }
  return false;
}

}  // namespace

FemLifeResult run_fatigue_fem(FemProblem& pb, const CycleLoad& load,
                              const FemFatigueOptions& fopts) {
  load.validate();
  if (load.substeps_per_cycle > 1 &&
      pb.fatigue().accumulation == AccumulationRule::LegacyPerIncrement)
    throw std::invalid_argument(
        "run_fatigue_fem: per-increment accumulation is not available here; "
        "use the 1D solver for sub-increment studies");

  const int nn = pb.n_nodes();
  const double height = pb.mesh().height();
  const double peak = load.peak_level();
  const auto& fp = pb.fatigue();

  FemLifeResult res;
  std::vector<double> u(std::size_t(2) * nn, 0.0), phi(nn, 0.0), phi_committed(nn, 0.0);
  std::vector<double> u_valley, phi_valley;
  std::vector<double> alpha_max(pb.n_ips()), alpha_min(pb.n_ips()), s1_peak(pb.n_ips());

  const bool want_vtk = !fopts.vtk_dir.empty();
  if (want_vtk) std::filesystem::create_directories(fopts.vtk_dir);
  auto snapshot = [&](std::uint64_t cycle, const char* tag) {
    if (!want_vtk) return;
    std::vector<double> ea(pb.mesh().n_elems()), eh(pb.mesh().n_elems());
    for (int e = 0; e < pb.mesh().n_elems(); ++e) {
      double sa = 0, sh = 0;
      for (int q = 0; q < 4; ++q) {
        sa += pb.states()[std::size_t(e) * 4 + q].fs.alpha_bar;
        sh += pb.states()[std::size_t(e) * 4 + q].H_raw;
      }
      ea[e] = 0.25 * sa;
      eh[e] = 0.25 * sh;
    }
    write_vtk(fopts.vtk_dir + "/cycle_" + std::to_string(cycle) + "_" + tag + ".vtk",
              pb.mesh(), u, phi, ea, eh);
  };

  for (std::uint64_t cycle = 1; cycle <= load.max_cycles; ++cycle) {
    pb.freeze_cycle_toughness();
    if (load.control == ControlMode::Load)
      pb.set_traction(peak);
    else
      pb.set_top_displacement(peak * height);

    const BfgsReport rep = pb.solve(u, phi);
    if (!rep.converged) {
      res.N_f = cycle;
      if (!res.N_i) res.N_i = cycle;
      res.failure_mode = "divergence";
      snapshot(cycle, "failure");
      break;
    }
    for (int n = 0; n < nn; ++n)
      phi[n] = std::min(1.0, std::max(phi[n], phi_committed[n]));
    phi_committed = phi;
    pb.set_phi_floor(phi_committed);

    // peak commit: history and driving peaks per integration point
    double max_phi = 0.0;
    for (int n = 0; n < nn; ++n) max_phi = std::max(max_phi, phi[n]);
    for (int e = 0; e < pb.mesh().n_elems(); ++e) {
      for (int q = 0; q < 4; ++q) {
        const int ipx = e * 4 + q;
        const auto f = pb.ip_field(u, phi, e, q);
        auto& st = pb.states()[ipx];
        st.H_raw = std::max(st.H_raw, f.psi_plus);
        const double g = degrade(f.phi);
        alpha_max[ipx] = g * f.psi_plus;
        const Sym3 sig = stress(f.eps, f.phi, pb.material());
        const auto pv = principal_values(sig);
        s1_peak[ipx] = std::max({pv[0], pv[1], pv[2]});
        if (load.substeps_per_cycle <= 1) {
          const Sym3 eps_v = f.eps * load.R;
          const double psi_v = split_energy(eps_v, pb.material(), pb.split()).plus;
          alpha_min[ipx] = g * psi_v;
          st.H_raw = std::max(st.H_raw, psi_v);
        }
      }
    }

    // optional equilibrium valley solve; the history field keeps phi frozen
    if (load.substeps_per_cycle > 1) {
      u_valley = u;
      phi_valley = phi;
      if (load.control == ControlMode::Load)
        pb.set_traction(peak * load.R);
      else
        pb.set_top_displacement(peak * load.R * height);
      const BfgsReport vrep = pb.solve(u_valley, phi_valley);
      if (!vrep.converged) {
        res.N_f = cycle;
        if (!res.N_i) res.N_i = cycle;
        res.failure_mode = "divergence";
        snapshot(cycle, "failure");
        break;
      }
      for (int e = 0; e < pb.mesh().n_elems(); ++e)
        for (int q = 0; q < 4; ++q) {
          const int ipx = e * 4 + q;
          const auto fv = pb.ip_field(u_valley, phi_valley, e, q);
          alpha_min[ipx] = degrade(fv.phi) * fv.psi_plus;
          pb.states()[ipx].H_raw = std::max(pb.states()[ipx].H_raw, fv.psi_plus);
        }
    }

    // accumulate fatigue once per cycle and point
    double max_ab = 0.0;
    for (int ipx = 0; ipx < pb.n_ips(); ++ipx) {
      auto& st = pb.states()[ipx];
      if (s1_peak[ipx] > 0.0) {
        const CycleObservation obs{alpha_max[ipx], alpha_min[ipx], load.R};
        switch (fp.accumulation) {
          case AccumulationRule::GeneralizedOnePerCycle:
            st.fs = accumulate_generalized(st.fs, obs, fp);
            break;
          case AccumulationRule::LegacyReformulated:
            st.fs.alpha_bar += accumulate_legacy_reformulated(obs, fp.n, fp.alpha_n);
            break;
          case AccumulationRule::LegacyRepresentative:
            st.fs.alpha_bar +=
                accumulate_legacy_representative(alpha_max[ipx], load.R, fp.n, fp.alpha_n);
            break;
          case AccumulationRule::LegacyPerIncrement:
            break;  // rejected above
        }
      }
      max_ab = std::max(max_ab, st.fs.alpha_bar);
    }

    if (!res.N_i && max_phi > fopts.phi_init_threshold) {
      res.N_i = cycle;
      snapshot(cycle, "initiation");
    }
    if (fopts.record_trace) res.trace.push_back({cycle, max_phi, max_ab});
    if (want_vtk && fopts.vtk_every > 0 && cycle % fopts.vtk_every == 0)
      snapshot(cycle, "state");

    if (max_phi > fopts.phi_fail &&
        section_severed(pb.mesh(), phi, fopts.phi_fail)) {
      res.N_f = cycle;
      if (!res.N_i) res.N_i = cycle;
      res.failure_mode = "severance";
      snapshot(cycle, "failure");
      break;
    }
  }

  res.runout = !res.N_f.has_value();
  res.u = std::move(u);
  res.phi = std::move(phi);
  return res;
}

double elastic_scf(const NotchGeometry& geom, const MaterialParams& mat,
                   double ref_ratio) {
  const Mesh mesh = generate_notched_mesh(geom, geom.rho, ref_ratio);
  FatigueParams fp;
  fp.alpha0 = 1.0;
  FemProblem pb(mesh, mat, PfModel::AT1, SplitKind::NoTension, fp);

  // net-section nominal stress of 1e-6 E keeps the response elastic
  const double sigma_nom = 1e-6 * mat.E;
  pb.set_traction(sigma_nom * geom.net_to_gross_area());
  std::vector<double> u(std::size_t(2) * pb.n_nodes(), 0.0), phi(pb.n_nodes(), 0.0);
  const auto rep = pb.solve(u, phi);
  if (!rep.converged) throw std::runtime_error("elastic_scf: solve failed");
  const int root = pb.mesh().set("notch_root").at(0);
  return pb.axial_stress_at_node(u, phi, root) / sigma_nom;
}

}  // namespace pff
