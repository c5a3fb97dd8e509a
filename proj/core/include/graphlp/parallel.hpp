#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <thread>
#include <vector>

namespace graphlp {

// Process-wide cap on worker threads (0 means hardware concurrency).
void set_thread_limit(unsigned limit);
unsigned thread_limit();

// Runs body(i) for i in [0, count).  Work is split into interleaved static
// slices, so any per-index output is independent of the thread count.
template <class Body>
void parallel_for(std::size_t count, Body&& body) {
  const std::size_t workers = std::min<std::size_t>(thread_limit(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < count; i += workers) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

// Recursive pairwise summation; the grouping depends only on n.
double pairwise_sum(const double* data, std::size_t n);
inline double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v.data(), v.size()); }

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

}  // namespace graphlp
