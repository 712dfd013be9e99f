#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace floorsum {

inline unsigned hardware_threads() {
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs fn(chunk) for chunk in [0, chunks) on up to `threads` workers.
// Work is split into caller-defined chunks, so any reduction the caller
// performs over per-chunk results in chunk order is independent of `threads`.
template <class Fn>
void parallel_for_chunks(std::size_t chunks, unsigned threads, Fn&& fn) {
  if (chunks == 0) return;
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(chunks)));
  if (threads == 1) {
    for (std::size_t c = 0; c < chunks; ++c) fn(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= chunks) return;
      try {
        fn(c);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(chunks);
        return;
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace floorsum
