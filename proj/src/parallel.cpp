#include "stokesdd/parallel.hpp"

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace stokesdd {

void parallel_for_ranges(index_t n, int nthreads,
                         const std::function<void(index_t, index_t)>& fn) {
  if (n <= 0) return;
  const int workers = std::min<index_t>(std::max(nthreads, 1), n);
  if (workers == 1) {
    fn(0, n);
    return;
  }
  const index_t chunk = (n + workers - 1) / workers;
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (int w = 0; w < workers; ++w) {
    const index_t begin = w * chunk;
    const index_t end = std::min<index_t>(begin + chunk, n);
    pool.emplace_back([&, w, begin, end] {
      try {
        if (begin < end) fn(begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace stokesdd
