#pragma once

#include <array>
#include <functional>
#include <vector>

#include "stokesdd/mesh.hpp"
#include "stokesdd/types.hpp"

namespace stokesdd {

/// Local edge numbering shared by the P2 basis and the dof layout.
constexpr int kTetEdges[6][2] = {{0, 1}, {0, 2}, {0, 3},
                                 {1, 2}, {1, 3}, {2, 3}};

/// Vector-valued Lagrange space of order 1 or 2 on a tetrahedral mesh. A
/// scalar dof is a mesh vertex (order 1) or a vertex or edge midpoint
/// (order 2); the vector dof for component a of scalar dof s is
/// a * n_scalar + s, so the layout is component-blocked.
struct FESpace {
  const Mesh* mesh = nullptr;
  int order = 1;
  index_t n_scalar = 0;
  std::vector<std::array<index_t, 10>> element_dofs;  // first 4 valid for P1
  std::vector<Vec3> dof_coords;

  int dofs_per_element() const { return order == 1 ? 4 : 10; }
  index_t n_dofs() const { return 3 * n_scalar; }
  index_t vdof(int comp, index_t scalar) const {
    return comp * n_scalar + scalar;
  }
};

FESpace build_fe_space(const Mesh& mesh, int order);

/// Reference basis on the unit tetrahedron, barycentric form. `vals` and
/// `grads` must hold 4 (order 1) or 10 (order 2) entries; vertex functions
/// come first, then edges in kTetEdges order.
void shape_values(int order, const Vec3& xi, double* vals);
void shape_gradients(int order, const Vec3& xi, Vec3* grads);

/// Affine geometry of one tetrahedron: x = v0 + J xi, volume = det(J) / 6.
struct TetGeometry {
  Vec3 v0;
  std::array<Vec3, 3> jac;   // columns of J
  std::array<Vec3, 3> jinv;  // rows of J^{-1}
  double volume;
};
TetGeometry tet_geometry(const Mesh& mesh, index_t tet);
Vec3 map_to_physical(const TetGeometry& g, const Vec3& xi);
/// Chain rule: (grad_x phi)_a = sum_k (grad_xi phi)_k * Jinv[k][a].
Vec3 physical_gradient(const TetGeometry& g, const Vec3& ref_grad);

/// Nodal interpolation of a vector field, returned in vdof layout.
std::vector<double> interpolate(const FESpace& space,
                                const std::function<Vec3(const Vec3&)>& field);

}  // namespace stokesdd
