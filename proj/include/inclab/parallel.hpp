#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace inclab {

/// Worker count for `requested` (0 = hardware concurrency), never above `items`.
inline unsigned resolve_workers(unsigned requested, std::size_t items) {
  unsigned w = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (items < w) w = static_cast<unsigned>(std::max<std::size_t>(items, 1));
  return w;
}

/// Runs fn(worker, begin, end) over contiguous blocks of [0, count).
/// Blocks are a pure function of (count, workers); the first exception
/// thrown by any worker is rethrown.
template <class Fn>
void parallel_blocks(std::size_t count, unsigned workers, Fn&& fn) {
  workers = resolve_workers(workers, count);
  if (workers <= 1) {
    fn(0u, std::size_t{0}, count);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = std::min(count, w * chunk);
    const std::size_t end = std::min(count, begin + chunk);
    threads.emplace_back([&, w, begin, end] {
      try {
        fn(w, begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace inclab
