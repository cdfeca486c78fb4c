#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace redweyl {

inline unsigned worker_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

// Runs body(b) for every block b in [0, nblocks). Blocks are dealt round-robin
// to workers; callers write results into per-block slots and merge them in
// block order, which keeps the output independent of the thread count.
template <class Body>
void for_each_block(std::size_t nblocks, Body&& body) {
  const std::size_t nthreads = std::min<std::size_t>(worker_count(), nblocks);
  if (nthreads <= 1) {
    for (std::size_t b = 0; b < nblocks; ++b) body(b);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (std::size_t t = 0; t < nthreads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t b = t; b < nblocks; b += nthreads) body(b);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace redweyl
