#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "stokesdd/decomposition.hpp"
#include "stokesdd/interface_structure.hpp"
#include "stokesdd/mesh.hpp"
#include "stokesdd/partition.hpp"
#include "stokesdd/stokes_penalty.hpp"

using namespace stokesdd;

namespace {

struct Setup {
  Mesh mesh;
  FESpace space;
  Partition partition;
  std::vector<char> node_constrained;
  InterfaceStructure structure;

  Setup(int n, int order, index_t qx, index_t qy, index_t qz,
        bool constrain_boundary = true)
      : mesh(build_box_mesh(n, n, n, {0, 0, 0}, {1, 1, 1})) {
    classify_boundary(mesh, {}, 1);
    space = build_fe_space(mesh, order);
    partition = grid_partition(mesh, qx, qy, qz);
    node_constrained.assign(space.n_scalar, 0);
    if (constrain_boundary) {
      Scenario sc;
      sc.epsilon = 1.0;
      sc.dirichlet.push_back(
          {1, [](const Vec3&) { return Vec3{0.0, 0.0, 0.0}; }});
      AssembledSystem sys = assemble(space, sc);
      std::vector<index_t> constrained =
          apply_dirichlet(sys.A, sys.b, space, sc);
      FreeDofMap map = build_free_dof_map(space.n_dofs(), constrained);
      node_constrained = constrained_nodes(space, map);
    }
    structure = build_interface_structure(space, partition, node_constrained);
  }
};

// Independent nec construction: group raw sharing sets, then pairwise
// strict-subset scans. Ordering differs from the library's; compare as sets.
struct BruteNecs {
  std::map<std::vector<index_t>, std::vector<index_t>> groups;
  std::set<std::vector<index_t>> coarse_sets;

  BruteNecs(const FESpace& space, const Partition& partition,
            const std::vector<char>& node_constrained) {
    std::vector<std::set<index_t>> sharing(space.n_scalar);
    const int dpe = space.dofs_per_element();
    for (index_t e = 0; e < space.mesh->n_tets(); ++e)
      for (int i = 0; i < dpe; ++i)
        sharing[space.element_dofs[e][i]].insert(
            partition.element_subdomain[e]);
    for (index_t s = 0; s < space.n_scalar; ++s) {
      if (node_constrained[s] || sharing[s].size() < 2) continue;
      groups[{sharing[s].begin(), sharing[s].end()}].push_back(s);
    }
    for (const auto& [set_a, nodes_a] : groups) {
      bool has_ancestor = false;
      for (const auto& [set_b, nodes_b] : groups) {
        if (set_b.size() <= set_a.size()) continue;
        if (std::includes(set_b.begin(), set_b.end(), set_a.begin(),
                          set_a.end()))
          has_ancestor = true;
      }
      if (!has_ancestor) coarse_sets.insert(set_a);
    }
  }
};

}  // namespace

TEST_CASE("two subdomains share a single face class") {
  Setup s(4, 1, 2, 1, 1);
  CHECK(s.structure.necs.size() == 1);
  const Nec& nec = s.structure.necs[0];
  CHECK(nec.subdomains == std::vector<index_t>({0, 1}));
  CHECK(nec.kind == Nec::Kind::kFace);
  CHECK(nec.ancestors.empty());
  CHECK(s.structure.coarse == std::vector<index_t>({0}));
  // Interface plane x = 1/2 without the boundary ring: 3x3 interior nodes.
  CHECK(nec.nodes.size() == 9);
  for (index_t node : nec.nodes) CHECK(pou_value(s.structure, node) == 1.0);
}

TEST_CASE("two by two decomposition has four faces and one edge") {
  Setup s(4, 1, 2, 2, 1);
  CHECK(s.structure.necs.size() == 5);
  int n_faces = 0, n_edges = 0;
  index_t edge_nec = -1;
  for (index_t i = 0; i < 5; ++i) {
    const Nec& nec = s.structure.necs[i];
    if (nec.subdomains.size() == 2) {
      ++n_faces;
      CHECK(nec.kind == Nec::Kind::kFace);
      CHECK(nec.ancestors.size() == 1);
    } else {
      ++n_edges;
      edge_nec = i;
      CHECK(nec.subdomains == std::vector<index_t>({0, 1, 2, 3}));
      CHECK(nec.kind == Nec::Kind::kEdge);
      CHECK(nec.ancestors.empty());
    }
  }
  CHECK(n_faces == 4);
  CHECK(n_edges == 1);
  CHECK(s.structure.coarse == std::vector<index_t>({edge_nec}));
  // All nodes are covered by the unique coarse class.
  for (index_t node : s.structure.interface_nodes)
    CHECK(pou_value(s.structure, node) == 1.0);
}

TEST_CASE("octant decomposition: 12 faces, 6 edges, 1 vertex class") {
  Setup s(4, 1, 2, 2, 2);
  CHECK(s.structure.necs.size() == 19);
  int n_face = 0, n_edge = 0, n_vertex = 0;
  for (const Nec& nec : s.structure.necs) {
    switch (nec.subdomains.size()) {
      case 2:
        ++n_face;
        CHECK(nec.kind == Nec::Kind::kFace);
        break;
      case 4:
        ++n_edge;
        CHECK(nec.kind == Nec::Kind::kEdge);
        break;
      case 8:
        ++n_vertex;
        CHECK(nec.kind == Nec::Kind::kVertex);
        // The vertex class is the cube center.
        CHECK(nec.nodes.size() == 1);
        {
          const Vec3& p = s.space.dof_coords[nec.nodes[0]];
          CHECK(p[0] == 0.5);
          CHECK(p[1] == 0.5);
          CHECK(p[2] == 0.5);
        }
        break;
      default:
        CHECK(false);
    }
  }
  CHECK(n_face == 12);
  CHECK(n_edge == 6);
  CHECK(n_vertex == 1);

  // Only the vertex class is coarse; the 18 others are its offspring.
  CHECK(s.structure.coarse.size() == 1);
  const Nec& coarse = s.structure.necs[s.structure.coarse[0]];
  CHECK(coarse.subdomains.size() == 8);
  for (index_t i = 0; i < 19; ++i) {
    if (i == s.structure.coarse[0]) continue;
    CHECK(s.structure.necs[i].covers ==
          std::vector<index_t>({s.structure.coarse[0]}));
  }
}

TEST_CASE("larger grids match a brute-force reconstruction") {
  for (int order : {1, 2}) {
    for (index_t q : {2, 3}) {
      Setup s(6, order, q, q, q);
      BruteNecs brute(s.space, s.partition, s.node_constrained);

      CHECK(s.structure.necs.size() == brute.groups.size());
      for (const Nec& nec : s.structure.necs) {
        auto it = brute.groups.find(nec.subdomains);
        REQUIRE(it != brute.groups.end());
        CHECK(nec.nodes == it->second);
      }
      std::set<std::vector<index_t>> coarse_sets;
      for (index_t c : s.structure.coarse)
        coarse_sets.insert(s.structure.necs[c].subdomains);
      CHECK(coarse_sets == brute.coarse_sets);

      // Interface nodes are exactly the grouped nodes.
      std::size_t total = 0;
      for (const auto& [key, nodes] : brute.groups) total += nodes.size();
      CHECK(s.structure.interface_nodes.size() == total);
    }
  }
}

TEST_CASE("every interface node is covered and weights are reciprocal") {
  Setup s(6, 2, 3, 3, 3);
  for (index_t node : s.structure.interface_nodes) {
    const index_t nec = s.structure.node_nec[node];
    REQUIRE(nec >= 0);
    const auto& covers = s.structure.necs[nec].covers;
    CHECK(covers.size() >= 1);
    CHECK(pou_value(s.structure, node) == 1.0 / covers.size());
    // Covering classes are coarse and contain the node's sharing set.
    for (index_t c : covers) {
      CHECK(std::binary_search(s.structure.coarse.begin(),
                               s.structure.coarse.end(), c));
      const auto& sub = s.structure.necs[nec].subdomains;
      const auto& sup = s.structure.necs[c].subdomains;
      CHECK(std::includes(sup.begin(), sup.end(), sub.begin(), sub.end()));
    }
  }
  // Off-interface nodes are rejected.
  for (index_t node = 0; node < s.space.n_scalar; ++node) {
    if (s.structure.node_nec[node] >= 0) continue;
    CHECK_THROWS(pou_value(s.structure, node));
    break;
  }
}

TEST_CASE("ancestor relation is strict and transitive") {
  Setup s(6, 1, 3, 3, 3);
  const auto& necs = s.structure.necs;
  for (index_t i = 0; i < static_cast<index_t>(necs.size()); ++i) {
    // Irreflexive.
    CHECK(std::find(necs[i].ancestors.begin(), necs[i].ancestors.end(), i) ==
          necs[i].ancestors.end());
    for (index_t j : necs[i].ancestors) {
      CHECK(necs[j].subdomains.size() > necs[i].subdomains.size());
      CHECK(std::includes(necs[j].subdomains.begin(),
                          necs[j].subdomains.end(),
                          necs[i].subdomains.begin(),
                          necs[i].subdomains.end()));
      // Transitive: ancestors of my ancestor are my ancestors.
      for (index_t k : necs[j].ancestors)
        CHECK(std::find(necs[i].ancestors.begin(), necs[i].ancestors.end(),
                        k) != necs[i].ancestors.end());
    }
  }
  // Kind classification follows the sharing-set cardinality on grids.
  for (const Nec& nec : necs) {
    if (nec.subdomains.size() == 2) CHECK(nec.kind == Nec::Kind::kFace);
    if (nec.subdomains.size() >= 8) CHECK(nec.kind == Nec::Kind::kVertex);
  }
}

TEST_CASE("dirichlet nodes never join the interface") {
  Setup constrained(4, 2, 2, 2, 2, true);
  Setup unconstrained(4, 2, 2, 2, 2, false);
  CHECK(constrained.structure.interface_nodes.size() <
        unconstrained.structure.interface_nodes.size());
  for (index_t node : constrained.structure.interface_nodes)
    CHECK_FALSE(constrained.node_constrained[node]);

  // Without the boundary exclusion the interface reaches the walls: the
  // x = 1/2 plane of a 2x1x1 split carries the full (2n+1)^2 grid minus the
  // boundary ring; unconstrained it is the full plane.
  Setup wall_free(4, 1, 2, 1, 1, false);
  CHECK(wall_free.structure.necs.size() == 1);
  CHECK(wall_free.structure.necs[0].nodes.size() == 25);
}

TEST_CASE("single subdomain has an empty interface") {
  Mesh mesh = build_box_mesh(2, 2, 2, {0, 0, 0}, {1, 1, 1});
  classify_boundary(mesh, {}, 1);
  FESpace space = build_fe_space(mesh, 1);
  Partition partition = grid_partition(mesh, 1, 1, 1);
  std::vector<char> none(space.n_scalar, 0);
  InterfaceStructure structure =
      build_interface_structure(space, partition, none);
  CHECK(structure.interface_nodes.empty());
  CHECK(structure.necs.empty());
  CHECK(structure.coarse.empty());
}
