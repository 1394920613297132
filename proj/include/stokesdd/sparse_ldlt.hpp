#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "stokesdd/sparse_matrix.hpp"
#include "stokesdd/types.hpp"

namespace stokesdd {

/// Thrown when a pivot of the LDL^T factorization drops below the positive
/// definiteness tolerance. `index` is the offending row in the caller's
/// numbering, not the permuted one.
struct NotSpdError : std::runtime_error {
  index_t index;
  explicit NotSpdError(index_t idx)
      : std::runtime_error("factorization pivot not positive at row " +
                           std::to_string(idx)),
        index(idx) {}
};

/// Sparse LDL^T factorization of a symmetric positive definite matrix stored
/// with both triangles. The factor uses the elimination-tree up-looking
/// scheme, so fill is the true sparse fill of the permuted matrix rather
/// than a banded profile. Pivots must exceed 1e-14 times the largest
/// diagonal entry of A or NotSpdError is thrown.
class SparseLdlt {
 public:
  /// Factors P A P^T with perm[new] = old. An empty perm selects reverse
  /// Cuthill-McKee.
  explicit SparseLdlt(const SparseMatrix& A, std::vector<index_t> perm = {});

  index_t dim() const { return n_; }
  index_t factor_nnz() const { return static_cast<index_t>(Li_.size()); }
  const std::vector<index_t>& permutation() const { return perm_; }

  /// x = A^{-1} b. One caller at a time per instance (shared scratch).
  void solve(const double* b, double* x) const;
  std::vector<double> solve(const std::vector<double>& b) const;

 private:
  index_t n_ = 0;
  std::vector<index_t> perm_;   // perm_[new] = old
  std::vector<index_t> iperm_;  // iperm_[old] = new
  std::vector<index_t> Lp_;     // column pointers of L (unit diagonal implicit)
  std::vector<index_t> Li_;
  std::vector<double> Lx_;
  std::vector<double> D_;
  mutable std::vector<double> work_;
};

inline SparseLdlt factor_spd(const SparseMatrix& A,
                             std::vector<index_t> perm = {}) {
  return SparseLdlt(A, std::move(perm));
}

}  // namespace stokesdd
