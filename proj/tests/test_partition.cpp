#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <set>
#include <vector>

#include "stokesdd/mesh.hpp"
#include "stokesdd/partition.hpp"

using namespace stokesdd;

namespace {

void check_partition_wellformed(const Partition& part, index_t n_elements) {
  CHECK(static_cast<index_t>(part.element_subdomain.size()) == n_elements);
  std::vector<index_t> seen(n_elements, 0);
  index_t total = 0;
  for (index_t s = 0; s < part.n_subdomains; ++s) {
    CHECK_FALSE(part.subdomain_elements[s].empty());
    CHECK(std::is_sorted(part.subdomain_elements[s].begin(),
                         part.subdomain_elements[s].end()));
    for (index_t e : part.subdomain_elements[s]) {
      CHECK(part.element_subdomain[e] == s);
      ++seen[e];
      ++total;
    }
  }
  CHECK(total == n_elements);
  for (index_t e = 0; e < n_elements; ++e) CHECK(seen[e] == 1);
}

}  // namespace

TEST_CASE("dual graph of the single-cell mesh is connected and symmetric") {
  Mesh mesh = build_box_mesh(1, 1, 1, {0, 0, 0}, {1, 1, 1});
  auto dual = dual_graph(mesh);
  CHECK(dual.size() == 6);
  for (index_t e = 0; e < 6; ++e) {
    CHECK_FALSE(dual[e].empty());
    CHECK(dual[e].size() <= 4);
    for (index_t n : dual[e]) {
      CHECK(std::binary_search(dual[n].begin(), dual[n].end(), e));
      CHECK(n != e);
    }
  }
  // Connectivity by walking from element 0.
  std::vector<char> visited(6, 0);
  std::vector<index_t> stack = {0};
  visited[0] = 1;
  while (!stack.empty()) {
    index_t e = stack.back();
    stack.pop_back();
    for (index_t n : dual[e])
      if (!visited[n]) {
        visited[n] = 1;
        stack.push_back(n);
      }
  }
  CHECK(std::count(visited.begin(), visited.end(), 1) == 6);
}

TEST_CASE("dual graph symmetry holds on larger meshes") {
  for (int n : {2, 3}) {
    Mesh mesh = build_box_mesh(n, n, n, {0, 0, 0}, {1, 1, 1});
    auto dual = dual_graph(mesh);
    for (index_t e = 0; e < static_cast<index_t>(dual.size()); ++e)
      for (index_t nb : dual[e])
        CHECK(std::binary_search(dual[nb].begin(), dual[nb].end(), e));
  }
}

TEST_CASE("bisection into two halves splits the long axis evenly") {
  Mesh mesh = build_box_mesh(2, 2, 2, {0, 0, 0}, {1, 1, 1});
  Partition part = partition_elements(mesh, 2);
  CHECK(part.n_subdomains == 2);
  check_partition_wellformed(part, 48);
  CHECK(part.subdomain_elements[0].size() == 24);
  CHECK(part.subdomain_elements[1].size() == 24);
}

TEST_CASE("eight subdomains on the 4-cube recover the octants") {
  Mesh mesh = build_box_mesh(4, 4, 4, {0, 0, 0}, {1, 1, 1});
  Partition part = partition_elements(mesh, 8);
  check_partition_wellformed(part, 6 * 64);
  for (index_t s = 0; s < 8; ++s)
    CHECK(part.subdomain_elements[s].size() == 48);

  // All elements of a subdomain share one octant of the cube.
  for (index_t s = 0; s < 8; ++s) {
    std::set<std::array<int, 3>> octants;
    for (index_t e : part.subdomain_elements[s]) {
      Vec3 c = {0, 0, 0};
      for (int i = 0; i < 4; ++i)
        for (int a = 0; a < 3; ++a)
          c[a] += 0.25 * mesh.vertices[mesh.tets[e][i]][a];
      octants.insert({c[0] > 0.5, c[1] > 0.5, c[2] > 0.5});
    }
    CHECK(octants.size() == 1);
  }
}

TEST_CASE("coordinate bisection balances awkward subdomain counts") {
  Mesh mesh = build_box_mesh(3, 3, 3, {0, 0, 0}, {1, 1, 1});
  const index_t ne = 6 * 27;
  for (index_t n_parts : {1, 3, 5, 7}) {
    Partition part = partition_elements(mesh, n_parts);
    CHECK(part.n_subdomains == n_parts);
    check_partition_wellformed(part, ne);
    // Slab-bounded imbalance: one cell layer holds 6*3*3 = 54 tets, and a
    // proportional cut never misses the ideal size by more than a layer.
    const index_t ideal = (ne + n_parts - 1) / n_parts;
    for (index_t s = 0; s < n_parts; ++s)
      CHECK(static_cast<index_t>(part.subdomain_elements[s].size()) <=
            ideal + 54);
  }
}

TEST_CASE("partitions are deterministic") {
  Mesh mesh = build_box_mesh(3, 3, 3, {0, 0, 0}, {1, 1, 1});
  Partition a = partition_elements(mesh, 5);
  Partition b = partition_elements(mesh, 5);
  CHECK(a.element_subdomain == b.element_subdomain);
}

TEST_CASE("subdomains stay face-connected") {
  Mesh mesh = build_box_mesh(4, 4, 4, {0, 0, 0}, {1, 1, 1});
  auto dual = dual_graph(mesh);
  for (index_t n_parts : {2, 4, 8, 16}) {
    Partition part = partition_elements(mesh, n_parts);
    for (index_t s = 0; s < n_parts; ++s)
      CHECK(subdomain_connected(dual, part, s));
  }
}

TEST_CASE("partition_elements rejects impossible counts") {
  Mesh mesh = build_box_mesh(1, 1, 1, {0, 0, 0}, {1, 1, 1});
  CHECK_THROWS(partition_elements(mesh, 0));
  CHECK_THROWS(partition_elements(mesh, 7));
}

TEST_CASE("grid partition produces exact cell blocks") {
  Mesh mesh = build_box_mesh(4, 4, 4, {0, 0, 0}, {1, 1, 1});
  Partition part = grid_partition(mesh, 2, 2, 2);
  CHECK(part.n_subdomains == 8);
  check_partition_wellformed(part, 6 * 64);
  for (index_t s = 0; s < 8; ++s)
    CHECK(part.subdomain_elements[s].size() == 6 * 8);

  // The six tets of one cell never split across subdomains.
  for (index_t cell = 0; cell < 64; ++cell)
    for (int t = 1; t < 6; ++t)
      CHECK(part.element_subdomain[6 * cell + t] ==
            part.element_subdomain[6 * cell]);

  CHECK_THROWS(grid_partition(mesh, 3, 1, 1));
  auto dual = dual_graph(mesh);
  for (index_t s = 0; s < 8; ++s)
    CHECK(subdomain_connected(dual, part, s));
}

TEST_CASE("grid partition handles anisotropic layouts") {
  Mesh mesh = build_box_mesh(4, 2, 2, {0, 0, 0}, {1, 1, 1});
  Partition part = grid_partition(mesh, 4, 1, 2);
  CHECK(part.n_subdomains == 8);
  check_partition_wellformed(part, 6 * 16);
}

TEST_CASE("partition io round trips") {
  Mesh mesh = build_box_mesh(2, 2, 2, {0, 0, 0}, {1, 1, 1});
  Partition part = partition_elements(mesh, 3);
  const auto path =
      std::filesystem::temp_directory_path() / "partition_roundtrip.txt";
  write_partition(path.string(), part);
  Partition back = read_partition(path.string(), 48);
  CHECK(back.n_subdomains == part.n_subdomains);
  CHECK(back.element_subdomain == part.element_subdomain);
  CHECK_THROWS(read_partition(path.string(), 47));
  std::filesystem::remove(path);
  CHECK_THROWS(read_partition("/nonexistent/partition.txt", 48));
}

TEST_CASE("partition_from_assignment validates labels") {
  CHECK_THROWS(partition_from_assignment(2, {0, 1, 2}));
  CHECK_THROWS(partition_from_assignment(2, {0, -1}));
  CHECK_THROWS(partition_from_assignment(3, {0, 0, 1}));  // subdomain 2 empty
  Partition part = partition_from_assignment(2, {1, 0, 1});
  CHECK(part.subdomain_elements[0] == std::vector<index_t>{1});
  CHECK(part.subdomain_elements[1] == std::vector<index_t>{0, 2});
}
