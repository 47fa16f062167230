#pragma once

#include <string>
#include <vector>

#include "pff/fem/mesh.hpp"

namespace pff {

/// Legacy ASCII VTK unstructured-grid snapshot: nodal displacement and phase
/// field, element-average fatigue history and driving-force history.
void write_vtk(const std::string& path, const Mesh& mesh,
               const std::vector<double>& u, const std::vector<double>& phi,
               const std::vector<double>& elem_alpha_bar,
               const std::vector<double>& elem_history);

}  // namespace pff
