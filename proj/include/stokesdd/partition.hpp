#pragma once

#include <string>
#include <vector>

#include "stokesdd/mesh.hpp"
#include "stokesdd/types.hpp"

namespace stokesdd {

struct Partition {
  index_t n_subdomains = 0;
  std::vector<index_t> element_subdomain;
  std::vector<std::vector<index_t>> subdomain_elements;  // ascending inside
};

/// Element adjacency through shared faces; each list is sorted. Tets have at
/// most four neighbors.
std::vector<std::vector<index_t>> dual_graph(const Mesh& mesh);

/// Recursive coordinate bisection of element centroids. Each split cuts the
/// longest bounding-box axis (ties pick the smaller axis index) at a
/// proportional position, so any subdomain count works and sizes differ by
/// bounded amounts. Fully deterministic: ties in the sort fall back to the
/// remaining coordinates and finally the element index.
Partition partition_elements(const Mesh& mesh, index_t n_subdomains);

/// Axis-aligned block partition into qx x qy x qz equal slabs of cells;
/// each count must divide the mesh's cell count on its axis. This is the
/// layout the scalability study prescribes.
Partition grid_partition(const Mesh& mesh, index_t qx, index_t qy, index_t qz);

Partition partition_from_assignment(index_t n_subdomains,
                                    std::vector<index_t> element_subdomain);

/// Plain text exchange format: one subdomain label per element per line.
void write_partition(const std::string& path, const Partition& partition);
Partition read_partition(const std::string& path, index_t n_elements);

/// True when the subdomain induces a connected subgraph of the dual graph.
bool subdomain_connected(const std::vector<std::vector<index_t>>& dual,
                         const Partition& partition, index_t subdomain);

}  // namespace stokesdd
