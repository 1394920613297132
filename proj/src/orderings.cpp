#include "stokesdd/orderings.hpp"

#include <algorithm>
#include <stdexcept>

namespace stokesdd {

namespace {

index_t row_degree(const SparseMatrix& A, index_t i) {
  return A.row_offsets[i + 1] - A.row_offsets[i];
}

/// Breadth-first levels from root over unvisited nodes; returns the level
/// structure as a flat node list plus the index where the last level starts.
struct LevelStructure {
  std::vector<index_t> nodes;
  std::size_t last_level_begin = 0;
  index_t n_levels = 0;
};

LevelStructure bfs_levels(const SparseMatrix& A, index_t root,
                          const std::vector<char>& visited,
                          std::vector<index_t>& mark, index_t epoch) {
  LevelStructure ls;
  ls.nodes.push_back(root);
  mark[root] = epoch;
  std::size_t level_begin = 0;
  while (level_begin < ls.nodes.size()) {
    const std::size_t level_end = ls.nodes.size();
    for (std::size_t k = level_begin; k < level_end; ++k) {
      const index_t u = ls.nodes[k];
      for (index_t p = A.row_offsets[u]; p < A.row_offsets[u + 1]; ++p) {
        const index_t v = A.col_indices[p];
        if (visited[v] || mark[v] == epoch) continue;
        mark[v] = epoch;
        ls.nodes.push_back(v);
      }
    }
    if (ls.nodes.size() == level_end) break;
    ls.last_level_begin = level_end;
    level_begin = level_end;
    ++ls.n_levels;
  }
  return ls;
}

index_t min_degree_node(const SparseMatrix& A, const std::vector<index_t>& set) {
  index_t best = set[0];
  index_t best_deg = row_degree(A, best);
  for (index_t v : set) {
    const index_t d = row_degree(A, v);
    if (d < best_deg || (d == best_deg && v < best)) {
      best = v;
      best_deg = d;
    }
  }
  return best;
}

}  // namespace

std::vector<index_t> rcm_ordering(const SparseMatrix& A) {
  if (A.nrows != A.ncols)
    throw std::invalid_argument("rcm_ordering: matrix not square");
  const index_t n = A.nrows;
  std::vector<char> visited(n, 0);
  std::vector<index_t> mark(n, -1);
  index_t epoch = 0;
  std::vector<index_t> order;
  order.reserve(n);
  std::vector<index_t> neigh;

  for (index_t seed = 0; seed < n; ++seed) {
    if (visited[seed]) continue;

    // Pseudo-peripheral start: walk to the far end of the component a
    // couple of times (George-Liu style), keeping the lowest-degree node of
    // the deepest level.
    index_t root = seed;
    index_t ecc = -1;
    for (int round = 0; round < 3; ++round) {
      LevelStructure ls = bfs_levels(A, root, visited, mark, epoch++);
      if (ls.n_levels <= ecc) break;
      ecc = ls.n_levels;
      std::vector<index_t> last(ls.nodes.begin() + ls.last_level_begin,
                                ls.nodes.end());
      root = min_degree_node(A, last);
    }

    // Cuthill-McKee sweep; the concatenated order is reversed at the end.
    const std::size_t comp_begin = order.size();
    order.push_back(root);
    visited[root] = 1;
    for (std::size_t head = comp_begin; head < order.size(); ++head) {
      const index_t u = order[head];
      neigh.clear();
      for (index_t p = A.row_offsets[u]; p < A.row_offsets[u + 1]; ++p) {
        const index_t v = A.col_indices[p];
        if (!visited[v]) {
          visited[v] = 1;
          neigh.push_back(v);
        }
      }
      std::sort(neigh.begin(), neigh.end(), [&](index_t a, index_t b) {
        const index_t da = row_degree(A, a), db = row_degree(A, b);
        if (da != db) return da < db;
        return a < b;
      });
      order.insert(order.end(), neigh.begin(), neigh.end());
    }
  }

  std::reverse(order.begin(), order.end());
  return order;
}

namespace {

struct NdState {
  const SparseMatrix& A;
  const std::vector<Vec3>& coords;
  std::vector<index_t> order;
  std::vector<index_t> mark;
  index_t epoch = 0;
};

void nd_recurse(NdState& st, std::vector<index_t> set) {
  if (set.size() <= 48) {
    st.order.insert(st.order.end(), set.begin(), set.end());
    return;
  }

  Vec3 lo = st.coords[set[0]], hi = st.coords[set[0]];
  for (index_t v : set)
    for (int a = 0; a < 3; ++a) {
      lo[a] = std::min(lo[a], st.coords[v][a]);
      hi[a] = std::max(hi[a], st.coords[v][a]);
    }
  int axis = 0;
  for (int a = 1; a < 3; ++a)
    if (hi[a] - lo[a] > hi[axis] - lo[axis]) axis = a;

  const std::size_t mid = set.size() / 2;
  std::nth_element(set.begin(), set.begin() + mid, set.end(),
                   [&](index_t a, index_t b) {
                     if (st.coords[a][axis] != st.coords[b][axis])
                       return st.coords[a][axis] < st.coords[b][axis];
                     return a < b;
                   });
  std::vector<index_t> low(set.begin(), set.begin() + mid);
  std::vector<index_t> high(set.begin() + mid, set.end());

  const index_t epoch = ++st.epoch;
  for (index_t v : high) st.mark[v] = epoch;
  std::vector<index_t> sep, keep;
  keep.reserve(low.size());
  for (index_t v : low) {
    bool cut = false;
    for (index_t p = st.A.row_offsets[v]; p < st.A.row_offsets[v + 1]; ++p)
      if (st.mark[st.A.col_indices[p]] == epoch) {
        cut = true;
        break;
      }
    (cut ? sep : keep).push_back(v);
  }

  nd_recurse(st, std::move(keep));
  nd_recurse(st, std::move(high));
  std::sort(sep.begin(), sep.end());
  st.order.insert(st.order.end(), sep.begin(), sep.end());
}

}  // namespace

std::vector<index_t> nested_dissection_ordering(
    const SparseMatrix& A, const std::vector<Vec3>& coords) {
  if (A.nrows != A.ncols)
    throw std::invalid_argument("nested_dissection_ordering: matrix not square");
  if (static_cast<index_t>(coords.size()) != A.nrows)
    throw std::invalid_argument(
        "nested_dissection_ordering: one coordinate per row required");
  NdState st{A, coords, {}, std::vector<index_t>(A.nrows, 0), 0};
  st.order.reserve(A.nrows);
  std::vector<index_t> all(A.nrows);
  for (index_t i = 0; i < A.nrows; ++i) all[i] = i;
  nd_recurse(st, std::move(all));
  return st.order;
}

}  // namespace stokesdd
