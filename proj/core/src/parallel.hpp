#pragma once

// Internal: bounded index-parallel loop. Thread count is capped by the
// MELNIKOV_LAB_THREADS environment variable (default: hardware concurrency).

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace pwhs::detail {

inline int thread_cap() {
    int cap = static_cast<int>(std::thread::hardware_concurrency());
    if (cap <= 0) cap = 1;
    if (const char* env = std::getenv("MELNIKOV_LAB_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) cap = std::min(cap, v);
    }
    return cap;
}

// Runs fn(i) for i in [0, n); results must be written to per-index slots so
// the merge order stays deterministic.
inline void parallel_for(int n, const std::function<void(int)>& fn) {
    const int threads = std::min(thread_cap(), std::max(1, n));
    if (threads == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (int i = t; i < n; i += threads) fn(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace pwhs::detail
