#pragma once

#include <vector>

#include "stokesdd/sparse_matrix.hpp"
#include "stokesdd/types.hpp"

namespace stokesdd {

/// Reverse Cuthill-McKee on the pattern of A (assumed structurally
/// symmetric). Disconnected components are ordered one after another, each
/// from a pseudo-peripheral start. Returns perm with perm[new] = old.
std::vector<index_t> rcm_ordering(const SparseMatrix& A);

/// Nested dissection driven by node coordinates: split the current node set
/// at the median of its longest bounding-box axis, take as separator the low
/// side's nodes with a graph neighbor on the high side, and order separators
/// last. Small sets fall back to Cuthill-McKee. Coordinates must have one
/// entry per row of A; fill stays low where RCM's profile would not.
std::vector<index_t> nested_dissection_ordering(const SparseMatrix& A,
                                                const std::vector<Vec3>& coords);

}  // namespace stokesdd
