#pragma once

#include <vector>

#include "stokesdd/types.hpp"

namespace stokesdd {

struct Triplet {
  index_t row;
  index_t col;
  double value;
};

/// Compressed sparse row matrix with owned storage. Symmetric matrices are
/// stored with both triangles present; `symmetric` is a hint maintained by
/// whoever builds the matrix, not something the struct enforces.
struct SparseMatrix {
  index_t nrows = 0;
  index_t ncols = 0;
  std::vector<index_t> row_offsets;  // size nrows + 1
  std::vector<index_t> col_indices;  // strictly increasing within each row
  std::vector<double> values;
  bool symmetric = false;

  index_t nnz() const { return static_cast<index_t>(values.size()); }

  static SparseMatrix identity(index_t n);

  /// Duplicate entries are summed in insertion order, so assembly output is
  /// bitwise reproducible as long as the triplet sequence is.
  static SparseMatrix from_triplets(index_t nrows, index_t ncols,
                                    std::vector<Triplet> triplets);
};

void spmv(const SparseMatrix& A, const double* x, double* y);
std::vector<double> spmv(const SparseMatrix& A, const std::vector<double>& x);

/// y += A^T x without forming the transpose.
void spmv_transpose_add(const SparseMatrix& A, const double* x, double* y);
std::vector<double> spmv_transpose(const SparseMatrix& A,
                                   const std::vector<double>& x);

SparseMatrix transpose(const SparseMatrix& A);
SparseMatrix matmul(const SparseMatrix& A, const SparseMatrix& B);

/// A(rows, rows) for a sorted, duplicate-free index set. Equals R A R^T for
/// the 0/1 restriction R built from the same set.
SparseMatrix principal_submatrix(const SparseMatrix& A,
                                 const std::vector<index_t>& rows);
SparseMatrix submatrix(const SparseMatrix& A, const std::vector<index_t>& rows,
                       const std::vector<index_t>& cols);

double entry(const SparseMatrix& A, index_t i, index_t j);
double max_abs(const SparseMatrix& A);

/// max_ij |A_ij - A_ji|; zero only when the stored pattern is symmetric too.
double max_asymmetry(const SparseMatrix& A);

}  // namespace stokesdd
