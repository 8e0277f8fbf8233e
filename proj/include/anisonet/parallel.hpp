#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace anisonet {

/// Worker count from ANISO_THREADS (a positive integer), else the hardware concurrency.
/// Results of every parallel routine in the library are independent of this value.
int worker_count();

/// Calls fn(i) for every i in [0, count). Indices are split into contiguous blocks, one per worker;
/// callers write results into per-index slots and reduce them in index order afterwards.
template <class F>
void parallel_for(std::size_t count, F&& fn, int workers = worker_count()) {
  const std::size_t w = std::max<std::size_t>(1, std::min<std::size_t>(static_cast<std::size_t>(workers), count));
  if (w <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(w);
  std::vector<std::thread> threads;
  threads.reserve(w);
  for (std::size_t t = 0; t < w; ++t) {
    threads.emplace_back([&, t] {
      const std::size_t begin = count * t / w;
      const std::size_t end = count * (t + 1) / w;
      try {
        for (std::size_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : threads) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace anisonet
