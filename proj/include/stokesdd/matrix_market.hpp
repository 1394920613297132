#pragma once

#include <string>
#include <vector>

#include "stokesdd/sparse_matrix.hpp"

namespace stokesdd {

/// Matrix Market coordinate format, real entries only. Matrices flagged
/// symmetric are written as the lower triangle under a `symmetric` banner
/// and expanded again on read. Values round-trip bit for bit.
void write_matrix_market(const std::string& path, const SparseMatrix& A);
SparseMatrix read_matrix_market(const std::string& path);

/// Plain text vectors: one value per line, '%' comment lines allowed.
void write_vector(const std::string& path, const std::vector<double>& v);
std::vector<double> read_vector(const std::string& path);

}  // namespace stokesdd
