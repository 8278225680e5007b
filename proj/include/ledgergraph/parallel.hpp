#pragma once

#include <cstddef>
#include <functional>

namespace ledgergraph {

// 0 means "use hardware concurrency".
unsigned resolve_workers(unsigned requested);

// Runs fn(begin, end, worker_index) over a static block partition of
// [0, count). Blocks are assigned by worker index, so any per-worker
// accumulators can be merged in index order for deterministic reductions.
void parallel_blocks(std::size_t count, unsigned workers,
                     const std::function<void(std::size_t, std::size_t, unsigned)>& fn);

} // namespace ledgergraph
