#include "stokesdd/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace stokesdd {

namespace {

void check_index_set(const std::vector<index_t>& set, index_t bound,
                     const char* what) {
  for (std::size_t k = 0; k < set.size(); ++k) {
    if (set[k] < 0 || set[k] >= bound)
      throw std::out_of_range(std::string(what) + " index out of range");
    if (k > 0 && set[k] <= set[k - 1])
      throw std::invalid_argument(std::string(what) +
                                  " indices must be strictly increasing");
  }
}

}  // namespace

SparseMatrix SparseMatrix::identity(index_t n) {
  SparseMatrix I;
  I.nrows = I.ncols = n;
  I.row_offsets.resize(n + 1);
  I.col_indices.resize(n);
  I.values.assign(n, 1.0);
  for (index_t i = 0; i <= n; ++i) I.row_offsets[i] = i;
  for (index_t i = 0; i < n; ++i) I.col_indices[i] = i;
  I.symmetric = true;
  return I;
}

SparseMatrix SparseMatrix::from_triplets(index_t nrows, index_t ncols,
                                         std::vector<Triplet> triplets) {
  if (nrows < 0 || ncols < 0)
    throw std::invalid_argument("from_triplets: negative dimension");
  for (const Triplet& t : triplets)
    if (t.row < 0 || t.row >= nrows || t.col < 0 || t.col >= ncols)
      throw std::out_of_range("from_triplets: entry out of range");

  // stable_sort keeps duplicates in insertion order; they are then summed
  // left to right.
  std::stable_sort(triplets.begin(), triplets.end(),
                   [](const Triplet& a, const Triplet& b) {
                     if (a.row != b.row) return a.row < b.row;
                     return a.col < b.col;
                   });

  SparseMatrix A;
  A.nrows = nrows;
  A.ncols = ncols;
  A.row_offsets.assign(nrows + 1, 0);
  A.col_indices.reserve(triplets.size());
  A.values.reserve(triplets.size());

  std::size_t k = 0;
  while (k < triplets.size()) {
    const index_t r = triplets[k].row;
    const index_t c = triplets[k].col;
    double v = triplets[k].value;
    ++k;
    while (k < triplets.size() && triplets[k].row == r &&
           triplets[k].col == c) {
      v += triplets[k].value;
      ++k;
    }
    A.col_indices.push_back(c);
    A.values.push_back(v);
    ++A.row_offsets[r + 1];
  }
  for (index_t i = 0; i < nrows; ++i)
    A.row_offsets[i + 1] += A.row_offsets[i];
  return A;
}

void spmv(const SparseMatrix& A, const double* x, double* y) {
  for (index_t i = 0; i < A.nrows; ++i) {
    double s = 0.0;
    for (index_t p = A.row_offsets[i]; p < A.row_offsets[i + 1]; ++p)
      s += A.values[p] * x[A.col_indices[p]];
    y[i] = s;
  }
}

std::vector<double> spmv(const SparseMatrix& A, const std::vector<double>& x) {
  if (static_cast<index_t>(x.size()) != A.ncols)
    throw std::invalid_argument("spmv: dimension mismatch");
  std::vector<double> y(A.nrows);
  spmv(A, x.data(), y.data());
  return y;
}

void spmv_transpose_add(const SparseMatrix& A, const double* x, double* y) {
  for (index_t i = 0; i < A.nrows; ++i) {
    const double xi = x[i];
    if (xi == 0.0) continue;
    for (index_t p = A.row_offsets[i]; p < A.row_offsets[i + 1]; ++p)
      y[A.col_indices[p]] += A.values[p] * xi;
  }
}

std::vector<double> spmv_transpose(const SparseMatrix& A,
                                   const std::vector<double>& x) {
  if (static_cast<index_t>(x.size()) != A.nrows)
    throw std::invalid_argument("spmv_transpose: dimension mismatch");
  std::vector<double> y(A.ncols, 0.0);
  spmv_transpose_add(A, x.data(), y.data());
  return y;
}

SparseMatrix transpose(const SparseMatrix& A) {
  SparseMatrix T;
  T.nrows = A.ncols;
  T.ncols = A.nrows;
  T.symmetric = A.symmetric;
  T.row_offsets.assign(T.nrows + 1, 0);
  T.col_indices.resize(A.values.size());
  T.values.resize(A.values.size());
  for (index_t c : A.col_indices) ++T.row_offsets[c + 1];
  for (index_t i = 0; i < T.nrows; ++i)
    T.row_offsets[i + 1] += T.row_offsets[i];
  std::vector<index_t> next(T.row_offsets.begin(), T.row_offsets.end() - 1);
  for (index_t i = 0; i < A.nrows; ++i)
    for (index_t p = A.row_offsets[i]; p < A.row_offsets[i + 1]; ++p) {
      const index_t q = next[A.col_indices[p]]++;
      T.col_indices[q] = i;
      T.values[q] = A.values[p];
    }
  return T;
}

SparseMatrix matmul(const SparseMatrix& A, const SparseMatrix& B) {
  if (A.ncols != B.nrows)
    throw std::invalid_argument("matmul: dimension mismatch");
  SparseMatrix C;
  C.nrows = A.nrows;
  C.ncols = B.ncols;
  C.row_offsets.assign(C.nrows + 1, 0);

  std::vector<double> acc(B.ncols, 0.0);
  std::vector<index_t> mark(B.ncols, -1);
  std::vector<index_t> cols;
  cols.reserve(64);

  for (index_t i = 0; i < A.nrows; ++i) {
    cols.clear();
    for (index_t p = A.row_offsets[i]; p < A.row_offsets[i + 1]; ++p) {
      const index_t k = A.col_indices[p];
      const double av = A.values[p];
      for (index_t q = B.row_offsets[k]; q < B.row_offsets[k + 1]; ++q) {
        const index_t j = B.col_indices[q];
        if (mark[j] != i) {
          mark[j] = i;
          acc[j] = 0.0;
          cols.push_back(j);
        }
        acc[j] += av * B.values[q];
      }
    }
    std::sort(cols.begin(), cols.end());
    for (index_t j : cols) {
      C.col_indices.push_back(j);
      C.values.push_back(acc[j]);
    }
    C.row_offsets[i + 1] =
        C.row_offsets[i] + static_cast<index_t>(cols.size());
  }
  return C;
}

SparseMatrix submatrix(const SparseMatrix& A, const std::vector<index_t>& rows,
                       const std::vector<index_t>& cols) {
  check_index_set(rows, A.nrows, "submatrix row");
  check_index_set(cols, A.ncols, "submatrix col");

  std::vector<index_t> col_pos(A.ncols, -1);
  for (std::size_t k = 0; k < cols.size(); ++k)
    col_pos[cols[k]] = static_cast<index_t>(k);

  SparseMatrix S;
  S.nrows = static_cast<index_t>(rows.size());
  S.ncols = static_cast<index_t>(cols.size());
  S.row_offsets.assign(S.nrows + 1, 0);
  for (index_t i = 0; i < S.nrows; ++i) {
    const index_t r = rows[i];
    for (index_t p = A.row_offsets[r]; p < A.row_offsets[r + 1]; ++p) {
      const index_t j = col_pos[A.col_indices[p]];
      if (j < 0) continue;
      S.col_indices.push_back(j);
      S.values.push_back(A.values[p]);
    }
    S.row_offsets[i + 1] = static_cast<index_t>(S.col_indices.size());
  }
  return S;
}

SparseMatrix principal_submatrix(const SparseMatrix& A,
                                 const std::vector<index_t>& rows) {
  SparseMatrix S = submatrix(A, rows, rows);
  S.symmetric = A.symmetric;
  return S;
}

double entry(const SparseMatrix& A, index_t i, index_t j) {
  if (i < 0 || i >= A.nrows || j < 0 || j >= A.ncols)
    throw std::out_of_range("entry: index out of range");
  const index_t* first = A.col_indices.data() + A.row_offsets[i];
  const index_t* last = A.col_indices.data() + A.row_offsets[i + 1];
  const index_t* it = std::lower_bound(first, last, j);
  if (it == last || *it != j) return 0.0;
  return A.values[A.row_offsets[i] + (it - first)];
}

double max_abs(const SparseMatrix& A) {
  double m = 0.0;
  for (double v : A.values) m = std::max(m, std::abs(v));
  return m;
}

double max_asymmetry(const SparseMatrix& A) {
  if (A.nrows != A.ncols)
    throw std::invalid_argument("max_asymmetry: matrix not square");
  double m = 0.0;
  for (index_t i = 0; i < A.nrows; ++i)
    for (index_t p = A.row_offsets[i]; p < A.row_offsets[i + 1]; ++p)
      m = std::max(m,
                   std::abs(A.values[p] - entry(A, A.col_indices[p], i)));
  return m;
}

}  // namespace stokesdd
