#include "stokesdd/vtk_writer.hpp"

#include <fstream>
#include <stdexcept>

namespace stokesdd {

void write_vtk(
    const std::string& path, const Mesh& mesh,
    const std::vector<std::pair<std::string, std::vector<double>>>& scalars,
    const std::vector<std::pair<std::string, std::vector<Vec3>>>& vectors) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.precision(12);

  const index_t nv = mesh.n_vertices();
  const index_t nt = mesh.n_tets();
  out << "# vtk DataFile Version 3.0\n";
  out << "velocity field\n";
  out << "ASCII\n";
  out << "DATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << nv << " double\n";
  for (const Vec3& v : mesh.vertices)
    out << v[0] << " " << v[1] << " " << v[2] << "\n";
  out << "CELLS " << nt << " " << 5 * nt << "\n";
  for (const auto& t : mesh.tets)
    out << "4 " << t[0] << " " << t[1] << " " << t[2] << " " << t[3] << "\n";
  out << "CELL_TYPES " << nt << "\n";
  for (index_t t = 0; t < nt; ++t) out << "10\n";

  if (!scalars.empty() || !vectors.empty()) out << "POINT_DATA " << nv << "\n";
  for (const auto& [name, data] : scalars) {
    if (static_cast<index_t>(data.size()) != nv)
      throw std::invalid_argument("write_vtk: scalar field size mismatch");
    out << "SCALARS " << name << " double 1\n";
    out << "LOOKUP_TABLE default\n";
    for (double x : data) out << x << "\n";
  }
  for (const auto& [name, data] : vectors) {
    if (static_cast<index_t>(data.size()) != nv)
      throw std::invalid_argument("write_vtk: vector field size mismatch");
    out << "VECTORS " << name << " double\n";
    for (const Vec3& v : data)
      out << v[0] << " " << v[1] << " " << v[2] << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<Vec3> vertex_velocity(const FESpace& space,
                                  const std::vector<double>& coeffs) {
  if (static_cast<index_t>(coeffs.size()) != space.n_dofs())
    throw std::invalid_argument("vertex_velocity: coefficient size mismatch");
  const index_t nv = space.mesh->n_vertices();
  std::vector<Vec3> out(nv);
  for (index_t v = 0; v < nv; ++v)
    for (int a = 0; a < 3; ++a) out[v][a] = coeffs[space.vdof(a, v)];
  return out;
}

}  // namespace stokesdd
