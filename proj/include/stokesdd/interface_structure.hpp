#pragma once

#include <vector>

#include "stokesdd/decomposition.hpp"
#include "stokesdd/fe_space.hpp"
#include "stokesdd/partition.hpp"
#include "stokesdd/types.hpp"

namespace stokesdd {

/// Equivalence class of interface nodes: all nodes shared by exactly the
/// same set of subdomains.
struct Nec {
  std::vector<index_t> nodes;       // scalar nodes, ascending
  std::vector<index_t> subdomains;  // sharing set, ascending
  std::vector<index_t> ancestors;   // necs whose sharing set strictly contains this one
  std::vector<index_t> covers;      // coarse necs whose set contains this one
  enum class Kind { kFace, kEdge, kVertex } kind = Kind::kFace;
};

struct InterfaceStructure {
  std::vector<index_t> interface_nodes;  // ascending; nodes in >= 2 subdomains, unconstrained
  std::vector<Nec> necs;                 // ordered by sharing set, lexicographic
  std::vector<index_t> coarse;           // ancestor-free necs, ascending
  std::vector<index_t> node_nec;         // per scalar node; -1 off the interface
};

/// Sorted set of subdomains whose elements contain each scalar node.
std::vector<std::vector<index_t>> node_sharing_sets(const FESpace& space,
                                                    const Partition& partition);

/// Builds the interface, its equivalence classes, the ancestor relation and
/// the coarse node selection. `node_constrained` marks nodes excluded from
/// the interface (Dirichlet).
InterfaceStructure build_interface_structure(
    const FESpace& space, const Partition& partition,
    const std::vector<char>& node_constrained);

/// Interface weight of one node: 1 over the number of coarse classes whose
/// sharing set contains the node's. Coarse-class nodes get weight one.
/// Throws when the node is not on the interface.
double pou_value(const InterfaceStructure& structure, index_t node);

}  // namespace stokesdd
