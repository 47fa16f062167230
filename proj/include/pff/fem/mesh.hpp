#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

namespace pff {

/// Axisymmetric half-model mesh of 4-node bilinear quadrilaterals in the
/// (r, z) plane. Node sets: "axis" (r = 0), "symmetry" (z = 0), "top"
/// (z = L, loaded face), "surface" (outer profile), "notch_root" (deepest
/// groove point) when generated from a notched geometry.
struct Mesh {
  std::vector<std::array<double, 2>> nodes;  ///< (r, z)
  std::vector<std::array<int, 4>> elems;     ///< counter-clockwise quads
  std::map<std::string, std::vector<int>> node_sets;
  std::vector<std::array<int, 2>> top_edges;  ///< segments of the loaded face

  int n_nodes() const { return int(nodes.size()); }
  int n_elems() const { return int(elems.size()); }
  double height() const;
  const std::vector<int>& set(const std::string& name) const;
};

/// Circumferentially V-grooved cylindrical bar, modeled as an axisymmetric
/// upper half (vertical symmetry through the groove plane).
struct NotchGeometry {
  double D = 0.0;                  ///< gross diameter
  double d = 0.0;                  ///< net diameter
  double rho = 0.0;                ///< notch root radius
  double groove_angle_deg = 60.0;  ///< included angle of the V
  double length = 0.0;             ///< half-length; 0 = default 2 D

  double half_length() const { return length > 0.0 ? length : 2.0 * D; }
  double net_to_gross_area() const { return (d * d) / (D * D); }
  void validate() const;

  /// Outer profile radius at height z (root arc, straight flank, shank).
  double profile(double z) const;
};

/// Graded structured mesh of the notched half-model. Element size at the
/// notch root is min(ell / ref_ratio, rho / 4), growing geometrically away
/// from the root. Throws std::invalid_argument on inconsistent geometry or
/// ref_ratio <= 0.
Mesh generate_notched_mesh(const NotchGeometry& geom, double ell, double ref_ratio);

/// Structured mesh of a plain cylinder r in [0, radius], z in [0, height]
/// with nr x nz elements; same node sets as the notched generator.
Mesh rect_mesh(double radius, double height, int nr, int nz);

/// Published test geometries. Valid kt: 2, 3, 5 for the 300M bar and
/// 2, 3 for the AISI 4340 bar.
NotchGeometry m300_notch(int kt);
NotchGeometry aisi4340_notch(int kt);

std::string mesh_to_json(const Mesh& mesh);
Mesh mesh_from_json(const std::string& text);
void write_mesh_file(const Mesh& mesh, const std::string& path);
Mesh read_mesh_file(const std::string& path);

}  // namespace pff
