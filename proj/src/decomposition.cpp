#include "stokesdd/decomposition.hpp"

#include <algorithm>
#include <stdexcept>

namespace stokesdd {

FreeDofMap build_free_dof_map(index_t n_dofs,
                              const std::vector<index_t>& constrained) {
  FreeDofMap map;
  map.global_to_free.assign(n_dofs, 0);
  for (index_t c : constrained) {
    if (c < 0 || c >= n_dofs)
      throw std::out_of_range("build_free_dof_map: constrained dof out of range");
    map.global_to_free[c] = -1;
  }
  map.free_to_global.reserve(n_dofs - constrained.size());
  for (index_t g = 0; g < n_dofs; ++g)
    if (map.global_to_free[g] == 0) {
      map.global_to_free[g] = static_cast<index_t>(map.free_to_global.size());
      map.free_to_global.push_back(g);
    }
  return map;
}

std::vector<double> gather_free(const FreeDofMap& map,
                                const std::vector<double>& full) {
  if (static_cast<index_t>(full.size()) != map.n_global())
    throw std::invalid_argument("gather_free: size mismatch");
  std::vector<double> out(map.n_free());
  for (index_t f = 0; f < map.n_free(); ++f) out[f] = full[map.free_to_global[f]];
  return out;
}

void scatter_free(const FreeDofMap& map, const std::vector<double>& free_vals,
                  std::vector<double>& full) {
  if (static_cast<index_t>(free_vals.size()) != map.n_free() ||
      static_cast<index_t>(full.size()) != map.n_global())
    throw std::invalid_argument("scatter_free: size mismatch");
  for (index_t f = 0; f < map.n_free(); ++f)
    full[map.free_to_global[f]] = free_vals[f];
}

std::vector<char> constrained_nodes(const FESpace& space,
                                    const FreeDofMap& map) {
  std::vector<char> constrained(space.n_scalar, 0);
  for (index_t s = 0; s < space.n_scalar; ++s)
    for (int a = 0; a < 3; ++a)
      if (map.global_to_free[space.vdof(a, s)] < 0) {
        constrained[s] = 1;
        break;
      }
  return constrained;
}

std::vector<std::vector<index_t>> subdomain_free_dofs(
    const FESpace& space, const Partition& partition, const FreeDofMap& map) {
  const int dpe = space.dofs_per_element();
  std::vector<std::vector<index_t>> sets(partition.n_subdomains);
  for (index_t s = 0; s < partition.n_subdomains; ++s) {
    std::vector<index_t>& set = sets[s];
    for (index_t e : partition.subdomain_elements[s])
      for (int i = 0; i < dpe; ++i)
        for (int a = 0; a < 3; ++a) {
          const index_t f =
              map.global_to_free[space.vdof(a, space.element_dofs[e][i])];
          if (f >= 0) set.push_back(f);
        }
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
  }
  return sets;
}

std::vector<std::vector<index_t>> extend_overlap(
    const SparseMatrix& A, const std::vector<std::vector<index_t>>& sets,
    index_t layers) {
  if (layers < 0) throw std::invalid_argument("extend_overlap: layers < 0");
  std::vector<std::vector<index_t>> out(sets.size());
  std::vector<index_t> mark(A.nrows, -1);
  for (std::size_t s = 0; s < sets.size(); ++s) {
    const index_t epoch = static_cast<index_t>(s);
    std::vector<index_t> current = sets[s];
    for (index_t d : current) mark[d] = epoch;
    std::vector<index_t> frontier = current;
    for (index_t layer = 0; layer < layers; ++layer) {
      std::vector<index_t> next;
      for (index_t d : frontier)
        for (index_t p = A.row_offsets[d]; p < A.row_offsets[d + 1]; ++p) {
          const index_t nb = A.col_indices[p];
          if (mark[nb] != epoch) {
            mark[nb] = epoch;
            next.push_back(nb);
          }
        }
      current.insert(current.end(), next.begin(), next.end());
      frontier = std::move(next);
      if (frontier.empty()) break;
    }
    std::sort(current.begin(), current.end());
    out[s] = std::move(current);
  }
  return out;
}

SparseMatrix restriction_matrix(const std::vector<index_t>& dofs,
                                index_t n_cols) {
  SparseMatrix R;
  R.nrows = static_cast<index_t>(dofs.size());
  R.ncols = n_cols;
  R.row_offsets.resize(R.nrows + 1);
  R.col_indices.resize(dofs.size());
  R.values.assign(dofs.size(), 1.0);
  for (index_t k = 0; k < R.nrows; ++k) {
    if (dofs[k] < 0 || dofs[k] >= n_cols)
      throw std::out_of_range("restriction_matrix: dof out of range");
    if (k > 0 && dofs[k] <= dofs[k - 1])
      throw std::invalid_argument("restriction_matrix: dofs must be ascending");
    R.row_offsets[k] = k;
    R.col_indices[k] = dofs[k];
  }
  R.row_offsets[R.nrows] = R.nrows;
  return R;
}

Decomposition build_decomposition(const FESpace& space,
                                  const Partition& partition,
                                  const FreeDofMap& map,
                                  const SparseMatrix& A_free, index_t layers) {
  if (A_free.nrows != map.n_free())
    throw std::invalid_argument("build_decomposition: matrix is not reduced");
  Decomposition dec;
  dec.overlap_layers = layers;
  dec.base = subdomain_free_dofs(space, partition, map);
  dec.overlap = extend_overlap(A_free, dec.base, layers);

  // Lowest touching subdomain owns a dof; base sets cover all free dofs, so
  // the owned sets form a partition.
  std::vector<index_t> owner(map.n_free(), -1);
  for (index_t s = static_cast<index_t>(dec.base.size()); s-- > 0;)
    for (index_t d : dec.base[s]) owner[d] = s;
  dec.owned.resize(dec.base.size());
  for (index_t d = 0; d < map.n_free(); ++d) {
    if (owner[d] < 0)
      throw std::runtime_error("build_decomposition: free dof not covered");
    dec.owned[owner[d]].push_back(d);
  }
  return dec;
}

}  // namespace stokesdd
