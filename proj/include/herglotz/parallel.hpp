#ifndef HERGLOTZ_PARALLEL_HPP
#define HERGLOTZ_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace herglotz {

inline std::atomic<unsigned>& thread_setting() {
  static std::atomic<unsigned> n{1};
  return n;
}

/// Worker count used by batch routines. Results never depend on it.
inline void set_threads(unsigned n) { thread_setting().store(std::max(1u, n)); }
inline unsigned threads() { return thread_setting().load(); }

/// Calls body(b) for every block b in [0, n_blocks). Blocks are handed out
/// dynamically; callers store per-block results and reduce them in block
/// order, which keeps floating-point sums independent of the thread count.
template <class Body>
void for_each_block(std::size_t n_blocks, Body&& body) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads(), n_blocks));
  if (workers <= 1) {
    for (std::size_t b = 0; b < n_blocks; ++b) body(b);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        try {
          for (std::size_t b = next++; b < n_blocks; b = next++) body(b);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mu);
          if (!failure) failure = std::current_exception();
          next = n_blocks;
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace herglotz

#endif  // HERGLOTZ_PARALLEL_HPP
