#include "pff/fem/vtk.hpp"

#include <cstdio>
#include <stdexcept>

namespace pff {

void write_vtk(const std::string& path, const Mesh& mesh,
               const std::vector<double>& u, const std::vector<double>& phi,
               const std::vector<double>& elem_alpha_bar,
               const std::vector<double>& elem_history) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open VTK file for writing: " + path);

  const int nn = mesh.n_nodes(), ne = mesh.n_elems();
  std::fprintf(f, "# vtk DataFile Version 3.0\n");
  std::fprintf(f, "axisymmetric phase field fatigue state\n");
  std::fprintf(f, "ASCII\nDATASET UNSTRUCTURED_GRID\n");

  std::fprintf(f, "POINTS %d double\n", nn);
  for (const auto& x : mesh.nodes) std::fprintf(f, "%.12g %.12g 0\n", x[0], x[1]);

  std::fprintf(f, "CELLS %d %d\n", ne, 5 * ne);
  for (const auto& e : mesh.elems)
    std::fprintf(f, "4 %d %d %d %d\n", e[0], e[1], e[2], e[3]);
  std::fprintf(f, "CELL_TYPES %d\n", ne);
  for (int e = 0; e < ne; ++e) std::fprintf(f, "9\n");

  std::fprintf(f, "POINT_DATA %d\n", nn);
  std::fprintf(f, "VECTORS displacement double\n");
  for (int n = 0; n < nn; ++n)
    std::fprintf(f, "%.12g %.12g 0\n", u[2 * n], u[2 * n + 1]);
  std::fprintf(f, "SCALARS phi double 1\nLOOKUP_TABLE default\n");
  for (int n = 0; n < nn; ++n) std::fprintf(f, "%.12g\n", phi[n]);

  std::fprintf(f, "CELL_DATA %d\n", ne);
  std::fprintf(f, "SCALARS alpha_bar double 1\nLOOKUP_TABLE default\n");
  for (int e = 0; e < ne; ++e) std::fprintf(f, "%.12g\n", elem_alpha_bar[e]);
  std::fprintf(f, "SCALARS history double 1\nLOOKUP_TABLE default\n");
  for (int e = 0; e < ne; ++e) std::fprintf(f, "%.12g\n", elem_history[e]);

  std::fclose(f);
}

}  // namespace pff
