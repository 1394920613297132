#include "stokesdd/mesh.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace stokesdd {

namespace {

// The six axis-permutation paths from the low to the high cell corner. Odd
// permutations get their last two vertices swapped so every tetrahedron has
// positive volume.
constexpr int kPerms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                              {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
constexpr bool kOdd[6] = {false, true, true, false, false, true};

}  // namespace

Mesh build_box_mesh(index_t nx, index_t ny, index_t nz, const Vec3& lo,
                    const Vec3& hi) {
  if (nx < 1 || ny < 1 || nz < 1)
    throw std::invalid_argument("build_box_mesh: cell counts must be >= 1");
  for (int a = 0; a < 3; ++a)
    if (!(hi[a] > lo[a]))
      throw std::invalid_argument("build_box_mesh: box extent must be positive");

  Mesh mesh;
  mesh.box_lo = lo;
  mesh.box_hi = hi;
  mesh.nx = nx;
  mesh.ny = ny;
  mesh.nz = nz;

  const Vec3 h = {(hi[0] - lo[0]) / nx, (hi[1] - lo[1]) / ny,
                  (hi[2] - lo[2]) / nz};
  mesh.vertices.reserve(static_cast<std::size_t>(nx + 1) * (ny + 1) * (nz + 1));
  for (index_t iz = 0; iz <= nz; ++iz)
    for (index_t iy = 0; iy <= ny; ++iy)
      for (index_t ix = 0; ix <= nx; ++ix)
        mesh.vertices.push_back(
            {lo[0] + ix * h[0], lo[1] + iy * h[1], lo[2] + iz * h[2]});

  auto vid = [&](index_t ix, index_t iy, index_t iz) {
    return ix + (nx + 1) * (iy + (ny + 1) * iz);
  };

  mesh.tets.reserve(static_cast<std::size_t>(mesh.n_cells()) * 6);
  for (index_t cz = 0; cz < nz; ++cz)
    for (index_t cy = 0; cy < ny; ++cy)
      for (index_t cx = 0; cx < nx; ++cx)
        for (int t = 0; t < 6; ++t) {
          index_t off[3] = {0, 0, 0};
          std::array<index_t, 4> v;
          v[0] = vid(cx, cy, cz);
          off[kPerms[t][0]] = 1;
          v[1] = vid(cx + off[0], cy + off[1], cz + off[2]);
          off[kPerms[t][1]] = 1;
          v[2] = vid(cx + off[0], cy + off[1], cz + off[2]);
          v[3] = vid(cx + 1, cy + 1, cz + 1);
          if (kOdd[t]) std::swap(v[2], v[3]);
          mesh.tets.push_back(v);
        }

  // Edges, deduplicated and sorted so lookups can binary search.
  std::vector<std::array<index_t, 2>> edges;
  edges.reserve(mesh.tets.size() * 6);
  for (const auto& tet : mesh.tets)
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b)
        edges.push_back({std::min(tet[a], tet[b]), std::max(tet[a], tet[b])});
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  mesh.edges = std::move(edges);

  // Faces seen by exactly one tetrahedron form the boundary; more than two
  // owners means the mesh is broken.
  std::map<std::array<index_t, 3>, std::pair<index_t, int>> face_count;
  for (index_t t = 0; t < mesh.n_tets(); ++t) {
    const auto& tet = mesh.tets[t];
    for (int skip = 0; skip < 4; ++skip) {
      std::array<index_t, 3> f;
      int k = 0;
      for (int a = 0; a < 4; ++a)
        if (a != skip) f[k++] = tet[a];
      std::sort(f.begin(), f.end());
      auto [it, inserted] = face_count.try_emplace(f, t, 0);
      if (++it->second.second > 2)
        throw std::runtime_error("build_box_mesh: face shared by > 2 tets");
    }
  }
  for (const auto& [f, owner] : face_count)
    if (owner.second == 1)
      mesh.boundary_faces.push_back({f, owner.first, 0});

  return mesh;
}

double tet_volume(const Mesh& mesh, index_t tet) {
  const auto& t = mesh.tets.at(tet);
  const Vec3 a = mesh.vertices[t[1]] - mesh.vertices[t[0]];
  const Vec3 b = mesh.vertices[t[2]] - mesh.vertices[t[0]];
  const Vec3 c = mesh.vertices[t[3]] - mesh.vertices[t[0]];
  const double det = a[0] * (b[1] * c[2] - b[2] * c[1]) -
                     a[1] * (b[0] * c[2] - b[2] * c[0]) +
                     a[2] * (b[0] * c[1] - b[1] * c[0]);
  return det / 6.0;
}

index_t edge_index(const Mesh& mesh, index_t a, index_t b) {
  const std::array<index_t, 2> key = {std::min(a, b), std::max(a, b)};
  auto it = std::lower_bound(mesh.edges.begin(), mesh.edges.end(), key);
  if (it == mesh.edges.end() || *it != key) return -1;
  return static_cast<index_t>(it - mesh.edges.begin());
}

void classify_boundary(Mesh& mesh, const std::vector<BoundaryRule>& rules,
                       int default_marker) {
  for (BoundaryFace& face : mesh.boundary_faces) {
    face.marker = default_marker;
    for (const BoundaryRule& rule : rules) {
      bool all = true;
      for (index_t v : face.vertices)
        if (!rule.contains(mesh.vertices[v])) {
          all = false;
          break;
        }
      if (all) {
        face.marker = rule.marker;
        break;
      }
    }
  }
}

std::vector<index_t> boundary_vertices(const Mesh& mesh, int marker) {
  std::vector<index_t> out;
  for (const BoundaryFace& face : mesh.boundary_faces)
    if (face.marker == marker)
      out.insert(out.end(), face.vertices.begin(), face.vertices.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<index_t> boundary_edges(const Mesh& mesh, int marker) {
  std::vector<index_t> out;
  for (const BoundaryFace& face : mesh.boundary_faces)
    if (face.marker == marker)
      for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) {
          const index_t e = edge_index(mesh, face.vertices[a], face.vertices[b]);
          if (e >= 0) out.push_back(e);
        }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace stokesdd
