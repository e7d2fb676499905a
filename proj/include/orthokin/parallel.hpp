#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace orthokin {

// Worker cap: ORTHOKIN_THREADS when set (minimum 1), otherwise the hardware
// concurrency.
int thread_cap();

// Runs fn(i) for i in [0, n) on up to thread_cap() workers with a static
// block split. Each index is visited exactly once, so writes to disjoint
// slots give results independent of the schedule.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    const std::size_t workers =
        std::min<std::size_t>(std::max(thread_cap(), 1), n == 0 ? 1 : n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = n * w / workers;
        const std::size_t end = n * (w + 1) / workers;
        pool.emplace_back([begin, end, &fn] {
            for (std::size_t i = begin; i < end; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace orthokin
