#pragma once

#include <vector>

#include "stokesdd/fe_space.hpp"
#include "stokesdd/partition.hpp"
#include "stokesdd/sparse_matrix.hpp"
#include "stokesdd/types.hpp"

namespace stokesdd {

/// Maps between the full vector-dof numbering and the free (unconstrained)
/// one that the solver and preconditioner work in.
struct FreeDofMap {
  std::vector<index_t> free_to_global;  // ascending
  std::vector<index_t> global_to_free;  // -1 for constrained dofs

  index_t n_free() const { return static_cast<index_t>(free_to_global.size()); }
  index_t n_global() const {
    return static_cast<index_t>(global_to_free.size());
  }
};

FreeDofMap build_free_dof_map(index_t n_dofs,
                              const std::vector<index_t>& constrained);

std::vector<double> gather_free(const FreeDofMap& map,
                                const std::vector<double>& full);
/// Writes free values into their global slots; other entries are untouched.
void scatter_free(const FreeDofMap& map, const std::vector<double>& free_vals,
                  std::vector<double>& full);

/// Per scalar node: true when any of its components is constrained.
std::vector<char> constrained_nodes(const FESpace& space,
                                    const FreeDofMap& map);

/// Free dofs carried by each subdomain's elements (ascending, overlap
/// layer zero).
std::vector<std::vector<index_t>> subdomain_free_dofs(const FESpace& space,
                                                      const Partition& partition,
                                                      const FreeDofMap& map);

/// Grows each dof set by `layers` breadth-first sweeps over the matrix
/// graph of A (one layer = all dofs coupled to the current set).
std::vector<std::vector<index_t>> extend_overlap(
    const SparseMatrix& A, const std::vector<std::vector<index_t>>& sets,
    index_t layers);

/// 0/1 restriction onto a sorted dof set: (R x)_k = x_{dofs[k]}.
SparseMatrix restriction_matrix(const std::vector<index_t>& dofs,
                                index_t n_cols);

struct Decomposition {
  index_t overlap_layers = 0;
  std::vector<std::vector<index_t>> base;     // layer-zero free dof sets
  std::vector<std::vector<index_t>> overlap;  // grown sets
  std::vector<std::vector<index_t>> owned;    // disjoint cover of free dofs
};

/// Base sets from the partition, overlap from the matrix graph, ownership
/// by lowest subdomain index. The owned sets partition the free dofs.
Decomposition build_decomposition(const FESpace& space,
                                  const Partition& partition,
                                  const FreeDofMap& map,
                                  const SparseMatrix& A_free, index_t layers);

}  // namespace stokesdd
