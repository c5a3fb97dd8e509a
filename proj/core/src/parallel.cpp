#include "graphlp/parallel.hpp"

#include <atomic>

namespace graphlp {

namespace {
std::atomic<unsigned> g_limit{0};
}

void set_thread_limit(unsigned limit) { g_limit = limit; }

unsigned thread_limit() {
  unsigned l = g_limit.load();
  if (l == 0) l = std::max(1u, std::thread::hardware_concurrency());
  return l;
}

double pairwise_sum(const double* data, std::size_t n) {
  if (n <= 16) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) s += data[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

// splitmix64 finaliser applied to the (master, stream) pair.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace graphlp
