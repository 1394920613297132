#include "stokesdd/fe_space.hpp"

#include <stdexcept>

namespace stokesdd {

FESpace build_fe_space(const Mesh& mesh, int order) {
  if (order != 1 && order != 2)
    throw std::invalid_argument("build_fe_space: order must be 1 or 2");
  FESpace space;
  space.mesh = &mesh;
  space.order = order;
  const index_t nv = mesh.n_vertices();
  space.n_scalar =
      order == 1 ? nv : nv + static_cast<index_t>(mesh.edges.size());

  space.element_dofs.resize(mesh.n_tets());
  for (index_t t = 0; t < mesh.n_tets(); ++t) {
    const auto& tet = mesh.tets[t];
    auto& dofs = space.element_dofs[t];
    dofs.fill(-1);
    for (int a = 0; a < 4; ++a) dofs[a] = tet[a];
    if (order == 2)
      for (int e = 0; e < 6; ++e) {
        const index_t ge =
            edge_index(mesh, tet[kTetEdges[e][0]], tet[kTetEdges[e][1]]);
        if (ge < 0) throw std::runtime_error("build_fe_space: missing edge");
        dofs[4 + e] = nv + ge;
      }
  }

  space.dof_coords = mesh.vertices;
  if (order == 2) {
    space.dof_coords.reserve(space.n_scalar);
    for (const auto& e : mesh.edges) {
      const Vec3& a = mesh.vertices[e[0]];
      const Vec3& b = mesh.vertices[e[1]];
      space.dof_coords.push_back({0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1]),
                                  0.5 * (a[2] + b[2])});
    }
  }
  return space;
}

void shape_values(int order, const Vec3& xi, double* vals) {
  const double l[4] = {1.0 - xi[0] - xi[1] - xi[2], xi[0], xi[1], xi[2]};
  if (order == 1) {
    for (int i = 0; i < 4; ++i) vals[i] = l[i];
    return;
  }
  for (int i = 0; i < 4; ++i) vals[i] = l[i] * (2.0 * l[i] - 1.0);
  for (int e = 0; e < 6; ++e)
    vals[4 + e] = 4.0 * l[kTetEdges[e][0]] * l[kTetEdges[e][1]];
}

void shape_gradients(int order, const Vec3& xi, Vec3* grads) {
  static constexpr Vec3 gl[4] = {
      {-1.0, -1.0, -1.0}, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}};
  const double l[4] = {1.0 - xi[0] - xi[1] - xi[2], xi[0], xi[1], xi[2]};
  if (order == 1) {
    for (int i = 0; i < 4; ++i) grads[i] = gl[i];
    return;
  }
  for (int i = 0; i < 4; ++i) {
    const double s = 4.0 * l[i] - 1.0;
    grads[i] = {s * gl[i][0], s * gl[i][1], s * gl[i][2]};
  }
  for (int e = 0; e < 6; ++e) {
    const int i = kTetEdges[e][0], j = kTetEdges[e][1];
    for (int a = 0; a < 3; ++a)
      grads[4 + e][a] = 4.0 * (l[i] * gl[j][a] + l[j] * gl[i][a]);
  }
}

TetGeometry tet_geometry(const Mesh& mesh, index_t tet) {
  const auto& t = mesh.tets.at(tet);
  TetGeometry g;
  g.v0 = mesh.vertices[t[0]];
  for (int c = 0; c < 3; ++c) g.jac[c] = mesh.vertices[t[c + 1]] - g.v0;

  const Vec3& a = g.jac[0];
  const Vec3& b = g.jac[1];
  const Vec3& c = g.jac[2];
  const double det = a[0] * (b[1] * c[2] - b[2] * c[1]) -
                     a[1] * (b[0] * c[2] - b[2] * c[0]) +
                     a[2] * (b[0] * c[1] - b[1] * c[0]);
  if (!(det > 0.0))
    throw std::runtime_error("tet_geometry: non-positive volume");
  g.volume = det / 6.0;

  // With J's columns a, b, c the inverse rows are the reciprocal vectors
  // b x c, c x a, a x b over det.
  g.jinv[0] = {(b[1] * c[2] - b[2] * c[1]) / det,
               (b[2] * c[0] - b[0] * c[2]) / det,
               (b[0] * c[1] - b[1] * c[0]) / det};
  g.jinv[1] = {(c[1] * a[2] - c[2] * a[1]) / det,
               (c[2] * a[0] - c[0] * a[2]) / det,
               (c[0] * a[1] - c[1] * a[0]) / det};
  g.jinv[2] = {(a[1] * b[2] - a[2] * b[1]) / det,
               (a[2] * b[0] - a[0] * b[2]) / det,
               (a[0] * b[1] - a[1] * b[0]) / det};
  return g;
}

Vec3 map_to_physical(const TetGeometry& g, const Vec3& xi) {
  Vec3 x = g.v0;
  for (int c = 0; c < 3; ++c)
    for (int a = 0; a < 3; ++a) x[a] += g.jac[c][a] * xi[c];
  return x;
}

Vec3 physical_gradient(const TetGeometry& g, const Vec3& ref_grad) {
  Vec3 out = {0.0, 0.0, 0.0};
  for (int k = 0; k < 3; ++k)
    for (int a = 0; a < 3; ++a) out[a] += ref_grad[k] * g.jinv[k][a];
  return out;
}

std::vector<double> interpolate(const FESpace& space,
                                const std::function<Vec3(const Vec3&)>& field) {
  std::vector<double> coeffs(space.n_dofs());
  for (index_t s = 0; s < space.n_scalar; ++s) {
    const Vec3 v = field(space.dof_coords[s]);
    for (int a = 0; a < 3; ++a) coeffs[space.vdof(a, s)] = v[a];
  }
  return coeffs;
}

}  // namespace stokesdd
