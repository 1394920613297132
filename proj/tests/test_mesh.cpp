#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "stokesdd/mesh.hpp"

using namespace stokesdd;

namespace {

// Brute-force edge enumeration: every vertex pair that appears in some tet.
std::set<std::array<index_t, 2>> brute_force_edges(const Mesh& mesh) {
  std::set<std::array<index_t, 2>> edges;
  for (const auto& t : mesh.tets)
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        edges.insert({std::min(t[i], t[j]), std::max(t[i], t[j])});
  return edges;
}

std::map<std::array<index_t, 3>, int> face_counts(const Mesh& mesh) {
  std::map<std::array<index_t, 3>, int> counts;
  for (const auto& t : mesh.tets) {
    const int faces[4][3] = {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}};
    for (const auto& f : faces) {
      std::array<index_t, 3> key = {t[f[0]], t[f[1]], t[f[2]]};
      std::sort(key.begin(), key.end());
      ++counts[key];
    }
  }
  return counts;
}

}  // namespace

TEST_CASE("single cell splits into 6 positive tets filling the cube") {
  Mesh mesh = build_box_mesh(1, 1, 1, {0, 0, 0}, {1, 1, 1});
  CHECK(mesh.vertices.size() == 8);
  CHECK(mesh.tets.size() == 6);
  double vol = 0.0;
  for (index_t t = 0; t < static_cast<index_t>(mesh.tets.size()); ++t) {
    const double v = tet_volume(mesh, t);
    CHECK(v > 0.0);
    vol += v;
  }
  CHECK(std::abs(vol - 1.0) <= 1e-12);
}

TEST_CASE("2x2x2 mesh has the enumerated counts") {
  Mesh mesh = build_box_mesh(2, 2, 2, {0, 0, 0}, {1, 1, 1});
  CHECK(mesh.vertices.size() == 27);
  CHECK(mesh.tets.size() == 48);
  // 2 triangles per cell face, 4 cell faces per cube side, 6 sides.
  CHECK(mesh.boundary_faces.size() == 48);
}

TEST_CASE("anisotropic boxes keep counts and volume") {
  Mesh mesh = build_box_mesh(3, 1, 2, {-1, 0, 2}, {1, 0.5, 3});
  CHECK(mesh.vertices.size() == 4 * 2 * 3);
  CHECK(mesh.tets.size() == 6 * 3 * 1 * 2);
  double vol = 0.0;
  for (index_t t = 0; t < static_cast<index_t>(mesh.tets.size()); ++t) {
    CHECK(tet_volume(mesh, t) > 0.0);
    vol += tet_volume(mesh, t);
  }
  CHECK(std::abs(vol - 2.0 * 0.5 * 1.0) <= 1e-12);
}

TEST_CASE("vertices are numbered lexicographically with x fastest") {
  Mesh mesh = build_box_mesh(2, 2, 2, {0, 0, 0}, {1, 1, 1});
  index_t v = 0;
  for (int k = 0; k <= 2; ++k)
    for (int j = 0; j <= 2; ++j)
      for (int i = 0; i <= 2; ++i, ++v) {
        CHECK(mesh.vertices[v][0] == doctest::Approx(i * 0.5).epsilon(1e-15));
        CHECK(mesh.vertices[v][1] == doctest::Approx(j * 0.5).epsilon(1e-15));
        CHECK(mesh.vertices[v][2] == doctest::Approx(k * 0.5).epsilon(1e-15));
      }
}

TEST_CASE("meshes are conforming: faces are shared by at most two tets") {
  for (int n : {1, 2, 3}) {
    Mesh mesh = build_box_mesh(n, n, n, {0, 0, 0}, {1, 1, 1});
    auto counts = face_counts(mesh);
    index_t n_boundary = 0;
    for (const auto& [face, count] : counts) {
      CHECK(count >= 1);
      CHECK(count <= 2);
      if (count == 1) ++n_boundary;
    }
    CHECK(n_boundary == static_cast<index_t>(mesh.boundary_faces.size()));
    // Every recorded boundary face is one of the count-1 faces.
    for (const auto& bf : counts) {
      if (bf.second != 1) continue;
      bool found = false;
      for (const auto& f : mesh.boundary_faces)
        if (f.vertices == bf.first) found = true;
      CHECK(found);
    }
  }
}

TEST_CASE("edge table matches a brute force pairwise scan") {
  for (int n : {1, 2, 3}) {
    Mesh mesh = build_box_mesh(n, n, n, {0, 0, 0}, {1, 1, 1});
    auto expected = brute_force_edges(mesh);
    CHECK(mesh.edges.size() == expected.size());
    for (const auto& e : mesh.edges) {
      CHECK(e[0] < e[1]);
      CHECK(expected.count(e) == 1);
    }
    // Sorted order enables binary search lookups.
    CHECK(std::is_sorted(mesh.edges.begin(), mesh.edges.end()));
    for (index_t i = 0; i < static_cast<index_t>(mesh.edges.size()); ++i)
      CHECK(edge_index(mesh, mesh.edges[i][0], mesh.edges[i][1]) == i);
  }
}

TEST_CASE("build_box_mesh rejects zero subdivisions") {
  CHECK_THROWS(build_box_mesh(0, 1, 1, {0, 0, 0}, {1, 1, 1}));
  CHECK_THROWS(build_box_mesh(1, 1, 1, {0, 0, 0}, {0, 1, 1}));
}

TEST_CASE("classify_boundary assigns one marker per face") {
  Mesh mesh = build_box_mesh(2, 2, 2, {0, 0, 0}, {1, 1, 1});

  SUBCASE("empty rules leave the default everywhere") {
    classify_boundary(mesh, {}, 7);
    for (const auto& f : mesh.boundary_faces) CHECK(f.marker == 7);
    std::vector<index_t> verts = boundary_vertices(mesh, 7);
    CHECK(verts.size() == 26);
    CHECK(std::is_sorted(verts.begin(), verts.end()));
  }

  SUBCASE("first matching rule wins") {
    auto x0 = [](const Vec3& p) { return p[0] == 0.0; };
    auto z0 = [](const Vec3& p) { return p[2] == 0.0; };
    classify_boundary(mesh, {{1, x0}, {2, z0}}, 0);
    int n1 = 0, n2 = 0, n0 = 0;
    for (const auto& f : mesh.boundary_faces) {
      if (f.marker == 1) ++n1;
      else if (f.marker == 2) ++n2;
      else ++n0;
    }
    CHECK(n1 == 8);
    CHECK(n2 == 8);
    CHECK(n0 == 32);
    // The shared edge x=0,z=0 went to marker 1.
    std::vector<index_t> v1 = boundary_vertices(mesh, 1);
    CHECK(v1.size() == 9);
    std::vector<index_t> v2 = boundary_vertices(mesh, 2);
    CHECK(v2.size() == 9);
  }
}

TEST_CASE("x=0 face of the unit cell carries 4 vertices and 2 faces") {
  Mesh mesh = build_box_mesh(1, 1, 1, {0, 0, 0}, {1, 1, 1});
  auto x0 = [](const Vec3& p) { return p[0] == 0.0; };
  classify_boundary(mesh, {{1, x0}}, 0);
  index_t n_faces = 0;
  for (const auto& f : mesh.boundary_faces)
    if (f.marker == 1) ++n_faces;
  CHECK(n_faces == 2);
  CHECK(boundary_vertices(mesh, 1).size() == 4);
}

TEST_CASE("boundary edges lie on the marked faces") {
  Mesh mesh = build_box_mesh(2, 2, 2, {0, 0, 0}, {1, 1, 1});
  classify_boundary(mesh, {}, 1);
  std::vector<index_t> edges = boundary_edges(mesh, 1);
  CHECK(std::is_sorted(edges.begin(), edges.end()));
  for (index_t e : edges) {
    const auto& ev = mesh.edges[e];
    bool on_some_face = false;
    for (const auto& f : mesh.boundary_faces) {
      const bool has0 = std::find(f.vertices.begin(), f.vertices.end(),
                                  ev[0]) != f.vertices.end();
      const bool has1 = std::find(f.vertices.begin(), f.vertices.end(),
                                  ev[1]) != f.vertices.end();
      if (has0 && has1) on_some_face = true;
    }
    CHECK(on_some_face);
  }
}
