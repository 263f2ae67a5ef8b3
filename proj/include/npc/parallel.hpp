#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace npc {

/// Process-wide worker ceiling, set once by the CLI (--threads).
void set_max_threads(unsigned n);
unsigned max_threads();

/// Runs fn(begin, end) over contiguous chunks of [first, last), one chunk per
/// worker. Chunks are disjoint, so workers writing to per-index output slots
/// never race. Falls back to a single inline call for small ranges.
void parallel_for_chunks(std::size_t first, std::size_t last,
                         const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace npc
