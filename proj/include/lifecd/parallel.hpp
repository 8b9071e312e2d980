#pragma once

#include <cstddef>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace lifecd {

/// Worker count for fanning independent items across threads.
/// LIFECD_THREADS caps it; never more threads than items.
inline int thread_budget(std::size_t items) {
    if (items <= 1) return 1;
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    long cap = static_cast<long>(hw);
    if (const char* env = std::getenv("LIFECD_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) cap = v;
    }
    if (cap > static_cast<long>(items)) cap = static_cast<long>(items);
    return static_cast<int>(cap);
}

/// Runs fn(i) for i in [0, count) across up to `threads` workers with static
/// chunking. Callers must aggregate by index so results are order-independent.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn,
                         int threads = 0) {
    if (count == 0) return;
    if (threads <= 0) threads = thread_budget(count);
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        std::size_t lo = count * static_cast<std::size_t>(t) / static_cast<std::size_t>(threads);
        std::size_t hi = count * static_cast<std::size_t>(t + 1) / static_cast<std::size_t>(threads);
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace lifecd
