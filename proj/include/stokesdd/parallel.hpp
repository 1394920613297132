#pragma once

#include <functional>

#include "stokesdd/types.hpp"

namespace stokesdd {

/// Runs fn over [0, n) split into contiguous half-open ranges, one per
/// worker thread; serial when nthreads <= 1. Workers must write disjoint
/// locations only. Reductions belong after the join, in index order, so
/// results do not depend on the thread count.
void parallel_for_ranges(index_t n, int nthreads,
                         const std::function<void(index_t, index_t)>& fn);

}  // namespace stokesdd
