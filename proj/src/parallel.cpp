#include "deadline_bcast/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace dbc {

int max_threads() {
  if (const char* env = std::getenv("DEADLINE_BCAST_THREADS")) {
    const int n = std::atoi(env);
    if (n < 1) throw std::invalid_argument("DEADLINE_BCAST_THREADS: must be >= 1");
    return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_chunks(std::uint64_t total, std::uint64_t chunk_size,
                     const std::function<void(std::uint64_t, std::uint64_t, std::uint64_t)>& work) {
  if (total == 0) return;
  if (chunk_size == 0) chunk_size = 1;
  const std::uint64_t chunks = (total + chunk_size - 1) / chunk_size;
  const int workers =
      static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(max_threads()), chunks));

  if (workers <= 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) {
      work(c, c * chunk_size, std::min(total, (c + 1) * chunk_size));
    }
    return;
  }

  std::atomic<std::uint64_t> next{0};
  auto runner = [&] {
    for (;;) {
      const std::uint64_t c = next.fetch_add(1, std::memory_order_relaxed);
      if (c >= chunks) return;
      work(c, c * chunk_size, std::min(total, (c + 1) * chunk_size));
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers) - 1);
  for (int i = 1; i < workers; ++i) pool.emplace_back(runner);
  runner();
  for (std::thread& th : pool) th.join();
}

}  // namespace dbc
