#pragma once

#include <cstddef>
#include <functional>

namespace heis {

// Worker count used by the data-parallel kernels. Defaults to HEIS_THREADS if
// set, otherwise the hardware concurrency.
unsigned thread_count();
void set_thread_count(unsigned n);

// Runs body(begin, end, chunk) over [0, n) split into fixed-size chunks.
// Chunk boundaries depend only on n and chunk_size, so per-chunk results
// reduced in chunk order are identical for every thread count.
void parallel_chunks(std::size_t n, std::size_t chunk_size,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

inline std::size_t chunk_count(std::size_t n, std::size_t chunk_size) {
  return (n + chunk_size - 1) / chunk_size;
}

}  // namespace heis
