#include "ledgergraph/parallel.hpp"

#include <thread>
#include <vector>

namespace ledgergraph {

unsigned resolve_workers(unsigned requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

void parallel_blocks(std::size_t count, unsigned workers,
                     const std::function<void(std::size_t, std::size_t, unsigned)>& fn) {
    workers = resolve_workers(workers);
    if (count == 0) return;
    if (workers > count) workers = static_cast<unsigned>(count);
    if (workers == 1) {
        fn(0, count, 0);
        return;
    }
    std::size_t chunk = (count + workers - 1) / workers;
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t begin = static_cast<std::size_t>(w) * chunk;
        std::size_t end = begin + chunk < count ? begin + chunk : count;
        if (begin >= end) break;
        threads.emplace_back([&fn, begin, end, w] { fn(begin, end, w); });
    }
    for (std::thread& t : threads) t.join();
}

} // namespace ledgergraph
