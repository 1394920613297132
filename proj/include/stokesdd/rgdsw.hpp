#pragma once

#include <vector>

#include "stokesdd/decomposition.hpp"
#include "stokesdd/interface_structure.hpp"
#include "stokesdd/sparse_matrix.hpp"

namespace stokesdd {

/// Coarse space built from interface weights: every coarse class gets three
/// columns, one per translation of the velocity, with interface values given
/// by the interface weights and interior values filled in by discrete
/// harmonic extension.
struct CoarseBasis {
  std::vector<index_t> interface_dofs;  // free dofs on the interface, ascending
  std::vector<index_t> interior_dofs;   // complement, ascending
  SparseMatrix phi_gamma;               // interface block, local row numbering
  SparseMatrix phi;                     // full basis, free numbering
  SparseMatrix a0;                      // Galerkin coarse matrix
  index_t n_coarse = 0;                 // classes; columns = 3 * n_coarse

  index_t dim() const { return phi.ncols; }
};

std::vector<index_t> interface_free_dofs(const FESpace& space,
                                         const InterfaceStructure& structure,
                                         const FreeDofMap& map);

/// Interface block of the basis: column (3c + j) carries the weight of each
/// covered node at that node's component-j dof and zero elsewhere. Rows are
/// positions in `interface_dofs`.
SparseMatrix build_interface_operator(const FESpace& space,
                                      const InterfaceStructure& structure,
                                      const FreeDofMap& map,
                                      const std::vector<index_t>& interface_dofs);

/// Fills interior rows with -A_II^{-1} A_IG phi_gamma, column by column.
/// Entries below 1e-14 times their column's max are dropped on store.
/// `interior_coords` (one point per interior dof) switches the interior
/// factorization to the nested-dissection ordering; pass null for the
/// default.
SparseMatrix harmonic_extension(const SparseMatrix& A_free,
                                const SparseMatrix& phi_gamma,
                                const std::vector<index_t>& interface_dofs,
                                const std::vector<index_t>& interior_dofs,
                                int nthreads,
                                const std::vector<Vec3>* interior_coords = nullptr);

/// A0 = phi^T A phi, validated symmetric to 1e-12 relative to its largest
/// entry, then symmetrized exactly.
SparseMatrix coarse_matrix(const SparseMatrix& A_free, const SparseMatrix& phi);

CoarseBasis build_coarse_basis(const FESpace& space,
                               const InterfaceStructure& structure,
                               const FreeDofMap& map,
                               const SparseMatrix& A_free, int nthreads);

}  // namespace stokesdd
