#include "girthlab/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>

namespace girthlab {

int resolve_thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("GIRTHLAB_THREADS")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_chunks(std::int64_t count, std::int64_t chunk, int threads,
                     const std::function<void(std::int64_t, std::int64_t, std::int64_t)>& fn) {
  if (count <= 0) return;
  if (chunk <= 0) throw std::invalid_argument("parallel_chunks: chunk must be positive");
  const std::int64_t chunks = chunk_count(count, chunk);
  const int workers = std::min<std::int64_t>(resolve_thread_count(threads), chunks);

  if (workers <= 1) {
    for (std::int64_t c = 0; c < chunks; ++c)
      fn(c, c * chunk, std::min(count, (c + 1) * chunk));
    return;
  }

  std::atomic<std::int64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::int64_t c = next.fetch_add(1, std::memory_order_relaxed);
      if (c >= chunks) return;
      try {
        fn(c, c * chunk, std::min(count, (c + 1) * chunk));
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(chunks, std::memory_order_relaxed);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers) - 1);
  for (int t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace girthlab
