#pragma once

// Deterministic block-parallel reduction utility.
//
// Work over [0, n) is split into fixed-size blocks; each block is reduced
// sequentially by the caller's functor into its own slot, and the slots are
// combined **in block-index order** afterwards.  The split depends only on n,
// never on the thread count, so results are bit-identical whether the blocks
// run on 1 thread or many.  The thread count is capped by the environment
// variable BIANGLE_THREADS (default: hardware concurrency).

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <limits>
#include <thread>
#include <vector>

namespace biangle {

inline unsigned thread_cap() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("BIANGLE_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && v < 1024) return static_cast<unsigned>(v);
    }
    return hw;
}

// body(begin, end, block_index) fills slot `block_index`; blocks are claimed
// from an atomic counter, so assignment to threads is irrelevant to results.
template <typename Body>
void for_each_block(std::size_t n, std::size_t block_size, Body&& body) {
    if (n == 0) return;
    if (block_size == 0) block_size = 1;
    const std::size_t nblocks = (n + block_size - 1) / block_size;
    const unsigned nthreads =
        static_cast<unsigned>(std::min<std::size_t>(thread_cap(), nblocks));
    if (nthreads <= 1) {
        for (std::size_t b = 0; b < nblocks; ++b) {
            body(b * block_size, std::min(n, (b + 1) * block_size), b);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t b = next.fetch_add(1);
            if (b >= nblocks) return;
            body(b * block_size, std::min(n, (b + 1) * block_size), b);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(nthreads - 1);
    for (unsigned i = 0; i + 1 < nthreads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
}

// Deterministic sum of per-item values: partial sums per fixed block, then a
// left-to-right combine over blocks.
template <typename Fn>
double block_sum(std::size_t n, Fn&& value_at, std::size_t block_size = 1024) {
    if (n == 0) return 0.0;
    const std::size_t nblocks = (n + block_size - 1) / block_size;
    std::vector<double> partial(nblocks, 0.0);
    for_each_block(n, block_size,
                   [&](std::size_t b, std::size_t e, std::size_t idx) {
                       double s = 0.0;
                       for (std::size_t i = b; i < e; ++i) s += value_at(i);
                       partial[idx] = s;
                   });
    double total = 0.0;
    for (double s : partial) total += s;
    return total;
}

// Deterministic minimum over items (order-independent, but kept on the same
// block machinery so scans share one code path).
template <typename Fn>
double block_min(std::size_t n, Fn&& value_at, std::size_t block_size = 1024) {
    const std::size_t nblocks = (n + block_size - 1) / block_size;
    std::vector<double> partial(nblocks,
                                std::numeric_limits<double>::infinity());
    for_each_block(n, block_size,
                   [&](std::size_t b, std::size_t e, std::size_t idx) {
                       double m = std::numeric_limits<double>::infinity();
                       for (std::size_t i = b; i < e; ++i) {
                           m = std::min(m, value_at(i));
                       }
                       partial[idx] = m;
                   });
    double m = std::numeric_limits<double>::infinity();
    for (double s : partial) m = std::min(m, s);
    return m;
}

}  // namespace biangle
