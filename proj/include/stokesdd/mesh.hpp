#pragma once

#include <array>
#include <functional>
#include <vector>

#include "stokesdd/types.hpp"

namespace stokesdd {

struct BoundaryFace {
  std::array<index_t, 3> vertices;  // sorted
  index_t tet;
  int marker = 0;
};

/// Conforming tetrahedral mesh of an axis-aligned box. Each grid cell is cut
/// into six tetrahedra sharing the cell diagonal from the low to the high
/// corner, so neighboring cells match on their common face.
struct Mesh {
  std::vector<Vec3> vertices;  // lexicographic, x fastest
  std::vector<std::array<index_t, 4>> tets;
  std::vector<std::array<index_t, 2>> edges;  // sorted pairs, lexicographic
  std::vector<BoundaryFace> boundary_faces;   // sorted by vertex triple
  Vec3 box_lo{0.0, 0.0, 0.0};
  Vec3 box_hi{1.0, 1.0, 1.0};
  index_t nx = 0, ny = 0, nz = 0;  // cells per axis

  index_t n_vertices() const { return static_cast<index_t>(vertices.size()); }
  index_t n_tets() const { return static_cast<index_t>(tets.size()); }
  index_t n_cells() const { return nx * ny * nz; }
};

Mesh build_box_mesh(index_t nx, index_t ny, index_t nz,
                    const Vec3& lo = {0.0, 0.0, 0.0},
                    const Vec3& hi = {1.0, 1.0, 1.0});

double tet_volume(const Mesh& mesh, index_t tet);

/// Index into mesh.edges for the undirected edge {a, b}; -1 if absent.
index_t edge_index(const Mesh& mesh, index_t a, index_t b);

/// A face is given the first rule whose predicate holds at all three of its
/// vertices; unmatched faces keep default_marker.
struct BoundaryRule {
  int marker;
  std::function<bool(const Vec3&)> contains;
};
void classify_boundary(Mesh& mesh, const std::vector<BoundaryRule>& rules,
                       int default_marker = 0);

std::vector<index_t> boundary_vertices(const Mesh& mesh, int marker);
std::vector<index_t> boundary_edges(const Mesh& mesh, int marker);

}  // namespace stokesdd
