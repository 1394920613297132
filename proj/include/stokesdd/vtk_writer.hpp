#pragma once

#include <string>
#include <utility>
#include <vector>

#include "stokesdd/fe_space.hpp"
#include "stokesdd/mesh.hpp"
#include "stokesdd/types.hpp"

namespace stokesdd {

/// Legacy ASCII VTK export of the tetrahedral mesh with point data at the
/// mesh vertices (linear cells; higher-order dofs are not written).
void write_vtk(
    const std::string& path, const Mesh& mesh,
    const std::vector<std::pair<std::string, std::vector<double>>>& scalars,
    const std::vector<std::pair<std::string, std::vector<Vec3>>>& vectors);

/// Velocity at the mesh vertices from a coefficient vector in vdof layout.
std::vector<Vec3> vertex_velocity(const FESpace& space,
                                  const std::vector<double>& coeffs);

}  // namespace stokesdd
