#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace smoothcount::detail {

// Fixed chunk size for every parallel enumeration. Chunk boundaries depend
// only on the problem size, never on the thread count, so partial results
// combined in chunk order are bit-identical for any number of workers.
inline constexpr std::uint64_t kChunkSize = 4096;

inline std::uint64_t chunk_count(std::uint64_t total) { return (total + kChunkSize - 1) / kChunkSize; }

// Runs body(chunk_index) for every chunk in [0, chunks) on up to `threads`
// workers. The first exception thrown by any worker is rethrown.
template <class Body>
void for_each_chunk(std::uint64_t chunks, std::size_t threads, Body&& body) {
  threads = std::max<std::size_t>(1, std::min<std::uint64_t>(threads, chunks));
  if (threads == 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) body(c);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
      workers.emplace_back([&] {
        for (std::uint64_t c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) {
          try {
            body(c);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next.store(chunks);
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace smoothcount::detail
