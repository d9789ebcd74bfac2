#pragma once

// Chunked fork-join over an index range. Each worker owns its chunk's output;
// callers merge and sort, so results never depend on the thread count.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace surflines {

inline unsigned worker_count() {
  if (const char* env = std::getenv("SURFLINES_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// body(begin, end, chunk_index) for consecutive ranges covering [0, n).
template <class Body>
void parallel_chunks(std::uint64_t n, std::uint64_t chunks, Body body) {
  if (n == 0) return;
  chunks = std::max<std::uint64_t>(1, std::min(chunks, n));
  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(worker_count(), chunks));
  auto range = [&](std::uint64_t c) {
    return std::pair<std::uint64_t, std::uint64_t>{n * c / chunks, n * (c + 1) / chunks};
  };
  if (workers <= 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) {
      auto [b, e] = range(c);
      body(b, e, c);
    }
    return;
  }
  std::exception_ptr failure;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::uint64_t c = w; c < chunks; c += workers) {
          auto [b, e] = range(c);
          body(b, e, c);
        }
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

// Runs body(begin, end) over chunks and concatenates the per-chunk vectors
// in chunk order.
template <class T, class Body>
std::vector<T> parallel_collect(std::uint64_t n, std::uint64_t chunks, Body body) {
  chunks = std::max<std::uint64_t>(1, std::min(chunks, std::max<std::uint64_t>(n, 1)));
  std::vector<std::vector<T>> parts(chunks);
  parallel_chunks(n, chunks, [&](std::uint64_t b, std::uint64_t e, std::uint64_t c) { parts[c] = body(b, e); });
  std::vector<T> out;
  for (auto& p : parts) out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
  return out;
}

}  // namespace surflines
