#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace scalpos {

/// Worker-pool cap shared by all scans. 0 means hardware concurrency.
int max_threads();
void set_max_threads(int n);

/// Deterministic parallel reduction over [0, count).
///
/// Work is split into fixed-size blocks; each block is mapped independently
/// and the per-block partials are folded in block order, so the result is
/// bitwise independent of the thread count and of scheduling.
template <class R, class Map, class Combine>
R parallel_reduce(std::size_t count, R init, Map map_block, Combine combine,
                  std::size_t block = 1024) {
    if (count == 0) return init;
    const std::size_t nblocks = (count + block - 1) / block;
    std::vector<R> partial(nblocks, init);

    int nthreads = max_threads();
    if (nthreads <= 0) nthreads = static_cast<int>(std::thread::hardware_concurrency());
    if (nthreads < 1) nthreads = 1;
    if (static_cast<std::size_t>(nthreads) > nblocks) nthreads = static_cast<int>(nblocks);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t b = next.fetch_add(1);
            if (b >= nblocks) return;
            const std::size_t lo = b * block;
            const std::size_t hi = std::min(count, lo + block);
            partial[b] = map_block(lo, hi);
        }
    };

    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    R acc = init;
    for (std::size_t b = 0; b < nblocks; ++b) acc = combine(acc, partial[b]);
    return acc;
}

}  // namespace scalpos
