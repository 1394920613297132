#include "stokesdd/sparse_ldlt.hpp"

#include <algorithm>

#include "stokesdd/orderings.hpp"

namespace stokesdd {

SparseLdlt::SparseLdlt(const SparseMatrix& A, std::vector<index_t> perm) {
  if (A.nrows != A.ncols)
    throw std::invalid_argument("SparseLdlt: matrix not square");
  n_ = A.nrows;
  perm_ = perm.empty() ? rcm_ordering(A) : std::move(perm);
  if (static_cast<index_t>(perm_.size()) != n_)
    throw std::invalid_argument("SparseLdlt: permutation has wrong length");
  iperm_.assign(n_, -1);
  for (index_t k = 0; k < n_; ++k) {
    if (perm_[k] < 0 || perm_[k] >= n_ || iperm_[perm_[k]] != -1)
      throw std::invalid_argument("SparseLdlt: invalid permutation");
    iperm_[perm_[k]] = k;
  }

  double max_diag = 0.0;
  for (index_t i = 0; i < n_; ++i)
    for (index_t p = A.row_offsets[i]; p < A.row_offsets[i + 1]; ++p)
      if (A.col_indices[p] == i) max_diag = std::max(max_diag, A.values[p]);
  const double pivot_tol = 1e-14 * max_diag;

  // Row k of P A P^T keeps only entries with permuted column <= k; by
  // symmetry these are the column-k upper entries the up-looking step needs.
  std::vector<index_t> parent(n_, -1), flag(n_, -1), lnz(n_, 0);
  for (index_t k = 0; k < n_; ++k) {
    flag[k] = k;
    const index_t r = perm_[k];
    for (index_t p = A.row_offsets[r]; p < A.row_offsets[r + 1]; ++p) {
      index_t i = iperm_[A.col_indices[p]];
      if (i >= k) continue;
      while (flag[i] != k) {
        if (parent[i] == -1) parent[i] = k;
        ++lnz[i];
        flag[i] = k;
        i = parent[i];
      }
    }
  }

  Lp_.assign(n_ + 1, 0);
  for (index_t k = 0; k < n_; ++k) Lp_[k + 1] = Lp_[k] + lnz[k];
  Li_.resize(Lp_[n_]);
  Lx_.resize(Lp_[n_]);
  D_.assign(n_, 0.0);

  std::vector<double> y(n_, 0.0);
  std::vector<index_t> pattern(n_);
  std::fill(flag.begin(), flag.end(), -1);
  std::fill(lnz.begin(), lnz.end(), 0);

  for (index_t k = 0; k < n_; ++k) {
    index_t top = n_;
    flag[k] = k;
    const index_t r = perm_[k];
    for (index_t p = A.row_offsets[r]; p < A.row_offsets[r + 1]; ++p) {
      index_t i = iperm_[A.col_indices[p]];
      if (i > k) continue;
      y[i] += A.values[p];
      index_t len = 0;
      while (flag[i] != k) {
        pattern[len++] = i;
        flag[i] = k;
        i = parent[i];
      }
      while (len > 0) pattern[--top] = pattern[--len];
    }
    double dk = y[k];
    y[k] = 0.0;
    for (; top < n_; ++top) {
      const index_t i = pattern[top];
      const double yi = y[i];
      y[i] = 0.0;
      const index_t p_end = Lp_[i] + lnz[i];
      for (index_t p = Lp_[i]; p < p_end; ++p) y[Li_[p]] -= Lx_[p] * yi;
      const double l_ki = yi / D_[i];
      dk -= l_ki * yi;
      Li_[p_end] = k;
      Lx_[p_end] = l_ki;
      ++lnz[i];
    }
    if (!(dk > pivot_tol)) throw NotSpdError(perm_[k]);
    D_[k] = dk;
  }
  work_.resize(n_);
}

void SparseLdlt::solve(const double* b, double* x) const {
  double* w = work_.data();
  for (index_t k = 0; k < n_; ++k) w[k] = b[perm_[k]];
  for (index_t j = 0; j < n_; ++j) {
    const double wj = w[j];
    if (wj == 0.0) continue;
    for (index_t p = Lp_[j]; p < Lp_[j + 1]; ++p) w[Li_[p]] -= Lx_[p] * wj;
  }
  for (index_t j = 0; j < n_; ++j) w[j] /= D_[j];
  for (index_t j = n_ - 1; j >= 0; --j) {
    double wj = w[j];
    for (index_t p = Lp_[j]; p < Lp_[j + 1]; ++p) wj -= Lx_[p] * w[Li_[p]];
    w[j] = wj;
  }
  for (index_t k = 0; k < n_; ++k) x[perm_[k]] = w[k];
}

std::vector<double> SparseLdlt::solve(const std::vector<double>& b) const {
  if (static_cast<index_t>(b.size()) != n_)
    throw std::invalid_argument("SparseLdlt::solve: dimension mismatch");
  std::vector<double> x(n_);
  solve(b.data(), x.data());
  return x;
}

}  // namespace stokesdd
