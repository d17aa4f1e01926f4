#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace girthlab {

/// Resolve a worker count: `requested` > 0 wins, otherwise the
/// GIRTHLAB_THREADS environment variable, otherwise hardware concurrency.
int resolve_thread_count(int requested);

/// Runs fn(chunk_index, begin, end) over fixed-size chunks of [0, count).
/// The chunk grid depends only on (count, chunk), never on the worker count,
/// so callers that store one partial result per chunk and combine them in
/// chunk order get bit-identical totals for any number of threads.
void parallel_chunks(std::int64_t count, std::int64_t chunk, int threads,
                     const std::function<void(std::int64_t, std::int64_t, std::int64_t)>& fn);

inline std::int64_t chunk_count(std::int64_t count, std::int64_t chunk) {
  return (count + chunk - 1) / chunk;
}

}  // namespace girthlab
