#pragma once
// Small fan-out helper. The worker count is capped by the
// DEADLINE_BCAST_THREADS environment variable (default: hardware
// concurrency). Work is split into fixed chunks so per-chunk results can be
// merged in chunk order, independent of the thread schedule.

#include <cstdint>
#include <functional>

namespace dbc {

int max_threads();

// Invokes work(chunk_index, begin, end) for consecutive half-open ranges of
// [0, total) with the given chunk size. Each chunk runs exactly once; the
// callable must only write to chunk-indexed slots.
void parallel_chunks(std::uint64_t total, std::uint64_t chunk_size,
                     const std::function<void(std::uint64_t, std::uint64_t, std::uint64_t)>& work);

}  // namespace dbc
