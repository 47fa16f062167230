#include "pff/fem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

namespace pff {

double Mesh::height() const {
  double h = 0.0;
  for (const auto& n : nodes) h = std::max(h, n[1]);
  return h;
}

const std::vector<int>& Mesh::set(const std::string& name) const {
  const auto it = node_sets.find(name);
  if (it == node_sets.end())
    throw std::invalid_argument("mesh has no node set '" + name + "'");
  return it->second;
}

void NotchGeometry::validate() const {
  if (!(D > 0.0)) throw std::invalid_argument("NotchGeometry.D: must be > 0");
  if (!(d > 0.0 && d < D))
    throw std::invalid_argument("NotchGeometry.d: must satisfy 0 < d < D");
  if (!(rho > 0.0)) throw std::invalid_argument("NotchGeometry.rho: must be > 0");
  if (!(groove_angle_deg > 0.0 && groove_angle_deg < 180.0))
    throw std::invalid_argument("NotchGeometry.groove_angle_deg: must lie in (0,180)");
  const double gamma = 0.5 * groove_angle_deg * std::numbers::pi / 180.0;
  const double r_T = 0.5 * d + rho * (1.0 - std::sin(gamma));
  if (r_T >= 0.5 * D)
    throw std::invalid_argument(
        "NotchGeometry: root radius too large for the groove depth");
  const double z_F = rho * std::cos(gamma) + (0.5 * D - r_T) * std::tan(gamma);
  if (z_F >= half_length())
    throw std::invalid_argument("NotchGeometry: groove flank exceeds the half-length");
}

double NotchGeometry::profile(double z) const {
  const double gamma = 0.5 * groove_angle_deg * std::numbers::pi / 180.0;
  const double z_T = rho * std::cos(gamma);
  const double r_T = 0.5 * d + rho * (1.0 - std::sin(gamma));
  if (z <= z_T) return 0.5 * d + rho - std::sqrt(std::max(0.0, rho * rho - z * z));
  const double z_F = z_T + (0.5 * D - r_T) * std::tan(gamma);
  if (z <= z_F) return r_T + (z - z_T) / std::tan(gamma);
  return 0.5 * D;
}

namespace {

/// Geometrically graded 1D spacing from h0 at the start, ratio-limited and
/// capped at hmax, covering [0, total]; returns the breakpoints.
std::vector<double> graded_line(double total, double h0, double hmax, double ratio) {
  std::vector<double> x{0.0};
  double h = h0;
  while (x.back() < total - 1e-12 * total) {
    x.push_back(std::min(x.back() + h, total));
    h = std::min(h * ratio, hmax);
  }
  // merge a final sliver into the previous interval
  if (x.size() > 2 && x[x.size() - 1] - x[x.size() - 2] < 0.3 * h0) {
    x.erase(x.end() - 2);
  }
  return x;
}

void check_positive_jacobians(const Mesh& mesh) {
  const double g = 1.0 / std::sqrt(3.0);
  const double gp[4][2] = {{-g, -g}, {g, -g}, {g, g}, {-g, g}};
  for (const auto& e : mesh.elems) {
    for (const auto& q : gp) {
      const double xi = q[0], eta = q[1];
      const double dN[4][2] = {{-(1 - eta) / 4, -(1 - xi) / 4},
                               {(1 - eta) / 4, -(1 + xi) / 4},
                               {(1 + eta) / 4, (1 + xi) / 4},
                               {-(1 + eta) / 4, (1 - xi) / 4}};
      double J[2][2] = {{0, 0}, {0, 0}};
      for (int a = 0; a < 4; ++a) {
        const auto& X = mesh.nodes[e[a]];
        J[0][0] += dN[a][0] * X[0];
        J[0][1] += dN[a][0] * X[1];
        J[1][0] += dN[a][1] * X[0];
        J[1][1] += dN[a][1] * X[1];
      }
      const double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
      if (!(det > 0.0))
        throw std::runtime_error("mesh generation produced a non-positive Jacobian");
    }
  }
}

Mesh structured_mesh(const std::vector<double>& zs, const std::vector<double>& xis,
                     const std::vector<double>& radii) {
  Mesh mesh;
  const int nz = int(zs.size());
  const int nr = int(xis.size());
  mesh.nodes.reserve(std::size_t(nz) * nr);
  for (int i = 0; i < nz; ++i)
    for (int j = 0; j < nr; ++j)
      mesh.nodes.push_back({xis[j] * radii[i], zs[i]});

  const auto id = [nr](int i, int j) { return i * nr + j; };
  for (int i = 0; i + 1 < nz; ++i)
    for (int j = 0; j + 1 < nr; ++j)
      mesh.elems.push_back({id(i, j), id(i, j + 1), id(i + 1, j + 1), id(i + 1, j)});

  auto& axis = mesh.node_sets["axis"];
  auto& sym = mesh.node_sets["symmetry"];
  auto& top = mesh.node_sets["top"];
  auto& surf = mesh.node_sets["surface"];
  for (int i = 0; i < nz; ++i) axis.push_back(id(i, 0));
  for (int j = 0; j < nr; ++j) sym.push_back(id(0, j));
  for (int j = 0; j < nr; ++j) top.push_back(id(nz - 1, j));
  for (int i = 0; i < nz; ++i) surf.push_back(id(i, nr - 1));
  for (int j = 0; j + 1 < nr; ++j)
    mesh.top_edges.push_back({id(nz - 1, j), id(nz - 1, j + 1)});
  return mesh;
}

}  // namespace

Mesh generate_notched_mesh(const NotchGeometry& geom, double ell, double ref_ratio) {
  geom.validate();
  if (!(ref_ratio > 0.0))
    throw std::invalid_argument("generate_notched_mesh: ref_ratio must be > 0");
  if (!(ell > 0.0))
    throw std::invalid_argument("generate_notched_mesh: ell must be > 0");

  const double L = geom.half_length();
  // Root element size resolves both the regularization length and the root
  // curvature.
  const double h0 = std::min(ell / ref_ratio, geom.rho / 4.0);
  const double hmax_z = L / 10.0;

  const auto zs = graded_line(L, h0, hmax_z, 1.18);

  // Radial lines share one normalized distribution, refined at the surface.
  const double rnet = 0.5 * geom.d;
  std::vector<double> xis{1.0};
  double dxi = h0 / rnet;
  while (xis.back() > 1e-12) {
    xis.push_back(std::max(0.0, xis.back() - dxi));
    dxi = std::min(dxi * 1.18, 0.15);
  }
  if (xis.size() > 2 && xis[xis.size() - 2] < 0.3 * h0 / rnet) xis.erase(xis.end() - 2);
  std::reverse(xis.begin(), xis.end());

  std::vector<double> radii;
  radii.reserve(zs.size());
  for (double z : zs) radii.push_back(geom.profile(z));

  Mesh mesh = structured_mesh(zs, xis, radii);
  // deepest groove point: (r = d/2, z = 0)
  mesh.node_sets["notch_root"] = {int(xis.size()) - 1};
  check_positive_jacobians(mesh);
  return mesh;
}

Mesh rect_mesh(double radius, double height, int nr, int nz) {
  if (!(radius > 0.0 && height > 0.0 && nr >= 1 && nz >= 1))
    throw std::invalid_argument("rect_mesh: invalid dimensions");
  std::vector<double> zs, xis;
  for (int i = 0; i <= nz; ++i) zs.push_back(height * double(i) / nz);
  for (int j = 0; j <= nr; ++j) xis.push_back(double(j) / nr);
  Mesh mesh = structured_mesh(zs, xis, std::vector<double>(zs.size(), radius));
  check_positive_jacobians(mesh);
  return mesh;
}

NotchGeometry m300_notch(int kt) {
  NotchGeometry g;
  g.D = 12.7;
  g.d = 6.35;
  switch (kt) {
    case 2: g.rho = 1.016; break;
    case 3: g.rho = 0.368; break;
    case 5: g.rho = 0.107; break;
    default:
      throw std::invalid_argument("m300_notch: kt must be 2, 3 or 5");
  }
  return g;
}

NotchGeometry aisi4340_notch(int kt) {
  NotchGeometry g;
  g.d = 5.59;
  switch (kt) {
    case 2:
      g.D = 7.62;
      g.rho = 0.762;
      break;
    case 3:
      g.D = 6.86;
      g.rho = 0.254;
      break;
    default:
      throw std::invalid_argument("aisi4340_notch: kt must be 2 or 3");
  }
  return g;
}

std::string mesh_to_json(const Mesh& mesh) {
  nlohmann::json j;
  j["nodes"] = mesh.nodes;
  j["elements"] = mesh.elems;
  j["node_sets"] = mesh.node_sets;
  j["top_edges"] = mesh.top_edges;
  return j.dump(1);
}

Mesh mesh_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  Mesh mesh;
  mesh.nodes = j.at("nodes").get<std::vector<std::array<double, 2>>>();
  mesh.elems = j.at("elements").get<std::vector<std::array<int, 4>>>();
  mesh.node_sets = j.at("node_sets").get<std::map<std::string, std::vector<int>>>();
  mesh.top_edges = j.at("top_edges").get<std::vector<std::array<int, 2>>>();
  const int n = mesh.n_nodes();
  for (const auto& e : mesh.elems)
    for (int a : e)
      if (a < 0 || a >= n) throw std::invalid_argument("mesh: connectivity out of range");
  for (const auto& [name, set] : mesh.node_sets)
    for (int a : set)
      if (a < 0 || a >= n)
        throw std::invalid_argument("mesh: node set '" + name + "' out of range");
  return mesh;
}

void write_mesh_file(const Mesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open mesh file for writing: " + path);
  out << mesh_to_json(mesh);
}

Mesh read_mesh_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open mesh file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return mesh_from_json(text);
}

}  // namespace pff
