#include "stokesdd/rgdsw.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stokesdd/orderings.hpp"
#include "stokesdd/parallel.hpp"
#include "stokesdd/sparse_ldlt.hpp"

namespace stokesdd {

std::vector<index_t> interface_free_dofs(const FESpace& space,
                                         const InterfaceStructure& structure,
                                         const FreeDofMap& map) {
  std::vector<index_t> dofs;
  dofs.reserve(structure.interface_nodes.size() * 3);
  for (int a = 0; a < 3; ++a)
    for (index_t node : structure.interface_nodes) {
      const index_t f = map.global_to_free[space.vdof(a, node)];
      if (f < 0)
        throw std::runtime_error(
            "interface_free_dofs: constrained node on the interface");
      dofs.push_back(f);
    }
  std::sort(dofs.begin(), dofs.end());
  return dofs;
}

SparseMatrix build_interface_operator(
    const FESpace& space, const InterfaceStructure& structure,
    const FreeDofMap& map, const std::vector<index_t>& interface_dofs) {
  std::vector<index_t> gamma_row(map.n_free(), -1);
  for (index_t r = 0; r < static_cast<index_t>(interface_dofs.size()); ++r)
    gamma_row[interface_dofs[r]] = r;

  const index_t n_coarse = static_cast<index_t>(structure.coarse.size());
  std::vector<Triplet> triplets;
  for (index_t ci = 0; ci < n_coarse; ++ci) {
    const index_t c = structure.coarse[ci];
    for (index_t k = 0; k < static_cast<index_t>(structure.necs.size()); ++k) {
      const Nec& nec = structure.necs[k];
      if (std::find(nec.covers.begin(), nec.covers.end(), c) ==
          nec.covers.end())
        continue;
      const double w = 1.0 / static_cast<double>(nec.covers.size());
      for (index_t node : nec.nodes)
        for (int a = 0; a < 3; ++a) {
          const index_t f = map.global_to_free[space.vdof(a, node)];
          const index_t row = gamma_row[f];
          if (row < 0)
            throw std::runtime_error(
                "build_interface_operator: interface dof missing");
          triplets.push_back({row, 3 * ci + a, w});
        }
    }
  }
  return SparseMatrix::from_triplets(
      static_cast<index_t>(interface_dofs.size()), 3 * n_coarse,
      std::move(triplets));
}

SparseMatrix harmonic_extension(const SparseMatrix& A_free,
                                const SparseMatrix& phi_gamma,
                                const std::vector<index_t>& interface_dofs,
                                const std::vector<index_t>& interior_dofs,
                                int nthreads,
                                const std::vector<Vec3>* interior_coords) {
  const index_t n_free = A_free.nrows;
  const index_t n_cols = phi_gamma.ncols;
  const index_t n_int = static_cast<index_t>(interior_dofs.size());
  if (phi_gamma.nrows != static_cast<index_t>(interface_dofs.size()))
    throw std::invalid_argument("harmonic_extension: row count mismatch");

  const SparseMatrix A_ii = principal_submatrix(A_free, interior_dofs);
  const SparseMatrix A_ig = submatrix(A_free, interior_dofs, interface_dofs);
  // Columns of the coupled load, one per coarse column.
  const SparseMatrix T =
      transpose(matmul(A_ig, phi_gamma));  // n_cols x n_int

  std::vector<index_t> perm;
  if (interior_coords) {
    if (static_cast<index_t>(interior_coords->size()) != n_int)
      throw std::invalid_argument(
          "harmonic_extension: one coordinate per interior dof");
    perm = nested_dissection_ordering(A_ii, *interior_coords);
  }
  const SparseLdlt interior_factor(A_ii, std::move(perm));

  // One dense solve per column, in parallel with private buffers; the
  // result columns are merged in order afterwards.
  std::vector<std::vector<std::pair<index_t, double>>> interior_cols(n_cols);
  parallel_for_ranges(n_cols, nthreads, [&](index_t lo, index_t hi) {
    std::vector<double> rhs(n_int), sol(n_int);
    for (index_t c = lo; c < hi; ++c) {
      std::fill(rhs.begin(), rhs.end(), 0.0);
      for (index_t p = T.row_offsets[c]; p < T.row_offsets[c + 1]; ++p)
        rhs[T.col_indices[p]] = T.values[p];
      interior_factor.solve(rhs.data(), sol.data());
      auto& col = interior_cols[c];
      for (index_t i = 0; i < n_int; ++i)
        if (sol[i] != 0.0) col.push_back({i, -sol[i]});
    }
  });

  const SparseMatrix phi_gamma_t = transpose(phi_gamma);
  std::vector<Triplet> triplets;
  for (index_t c = 0; c < n_cols; ++c) {
    double col_max = 0.0;
    for (index_t p = phi_gamma_t.row_offsets[c];
         p < phi_gamma_t.row_offsets[c + 1]; ++p)
      col_max = std::max(col_max, std::abs(phi_gamma_t.values[p]));
    for (const auto& [i, v] : interior_cols[c])
      col_max = std::max(col_max, std::abs(v));
    const double drop = 1e-14 * col_max;

    for (index_t p = phi_gamma_t.row_offsets[c];
         p < phi_gamma_t.row_offsets[c + 1]; ++p)
      if (std::abs(phi_gamma_t.values[p]) >= drop)
        triplets.push_back({interface_dofs[phi_gamma_t.col_indices[p]], c,
                            phi_gamma_t.values[p]});
    for (const auto& [i, v] : interior_cols[c])
      if (std::abs(v) >= drop)
        triplets.push_back({interior_dofs[i], c, v});
  }
  return SparseMatrix::from_triplets(n_free, n_cols, std::move(triplets));
}

SparseMatrix coarse_matrix(const SparseMatrix& A_free,
                           const SparseMatrix& phi) {
  SparseMatrix a0 = matmul(transpose(phi), matmul(A_free, phi));
  const double scale = std::max(1.0, max_abs(a0));
  if (max_asymmetry(a0) > 1e-12 * scale)
    throw std::runtime_error("coarse_matrix: coarse matrix is not symmetric");
  // Average away the rounding asymmetry so the factorization sees one value.
  SparseMatrix a0t = transpose(a0);
  for (index_t i = 0; i < a0.nrows; ++i)
    for (index_t p = a0.row_offsets[i]; p < a0.row_offsets[i + 1]; ++p)
      a0.values[p] = 0.5 * (a0.values[p] + entry(a0t, i, a0.col_indices[p]));
  a0.symmetric = true;
  return a0;
}

CoarseBasis build_coarse_basis(const FESpace& space,
                               const InterfaceStructure& structure,
                               const FreeDofMap& map,
                               const SparseMatrix& A_free, int nthreads) {
  CoarseBasis basis;
  basis.n_coarse = static_cast<index_t>(structure.coarse.size());
  basis.interface_dofs = interface_free_dofs(space, structure, map);

  std::vector<char> on_interface(map.n_free(), 0);
  for (index_t d : basis.interface_dofs) on_interface[d] = 1;
  basis.interior_dofs.reserve(map.n_free() - basis.interface_dofs.size());
  for (index_t d = 0; d < map.n_free(); ++d)
    if (!on_interface[d]) basis.interior_dofs.push_back(d);

  basis.phi_gamma = build_interface_operator(space, structure, map,
                                             basis.interface_dofs);

  std::vector<Vec3> interior_coords(basis.interior_dofs.size());
  for (std::size_t k = 0; k < basis.interior_dofs.size(); ++k) {
    const index_t g = map.free_to_global[basis.interior_dofs[k]];
    interior_coords[k] = space.dof_coords[g % space.n_scalar];
  }
  basis.phi = harmonic_extension(A_free, basis.phi_gamma, basis.interface_dofs,
                                 basis.interior_dofs, nthreads,
                                 &interior_coords);
  basis.a0 = coarse_matrix(A_free, basis.phi);
  return basis;
}

}  // namespace stokesdd
