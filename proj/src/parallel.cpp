#include "npc/parallel.hpp"

#include <atomic>

namespace npc {

namespace {
std::atomic<unsigned> g_max_threads{0};  // 0 = hardware default
}

void set_max_threads(unsigned n) { g_max_threads.store(n); }

unsigned max_threads() {
  unsigned n = g_max_threads.load();
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

void parallel_for_chunks(std::size_t first, std::size_t last,
                         const std::function<void(std::size_t, std::size_t)>& fn) {
  const std::size_t count = last > first ? last - first : 0;
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(max_threads(), count));
  if (workers <= 1 || count < 256) {
    if (count > 0) fn(first, last);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t lo = first + w * chunk;
    if (lo >= last) break;
    const std::size_t hi = std::min(last, lo + chunk);
    pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace npc
