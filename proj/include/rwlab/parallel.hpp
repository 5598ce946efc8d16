#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace rwlab {

/// Thread cap: RWLAB_THREADS when set, hardware concurrency otherwise.
inline unsigned thread_budget() {
    if (const char* env = std::getenv("RWLAB_THREADS")) {
        long n = std::strtol(env, nullptr, 10);
        if (n >= 1) return static_cast<unsigned>(n);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Index-parallel loop. The body must only write state owned by its index, so
/// results are independent of the schedule.
inline void parallel_for(int n, const std::function<void(int)>& body) {
    unsigned threads = std::min<unsigned>(thread_budget(), n > 0 ? n : 1);
    if (threads <= 1 || n < 4) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t]() {
            for (int i = static_cast<int>(t); i < n; i += static_cast<int>(threads)) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace rwlab
