#pragma once

#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace sphtrop {

/// Worker cap from SPHTROP_THREADS; defaults to 1 (serial). Results never
/// depend on the cap: callers collect into index-addressed slots.
inline unsigned thread_cap() {
    const char* env = std::getenv("SPHTROP_THREADS");
    if (!env) return 1;
    long v = std::strtol(env, nullptr, 10);
    if (v <= 1) return 1;
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    return static_cast<unsigned>(v) < hw ? static_cast<unsigned>(v) : hw;
}

/// Apply f(i) for i in [0, n), possibly across threads. f must only touch
/// its own slot of any shared output.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f) {
    unsigned workers = thread_cap();
    if (workers <= 1 || n < 4) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> threads;
    std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t lo = w * chunk;
        std::size_t hi = lo + chunk < n ? lo + chunk : n;
        if (lo >= hi) break;
        threads.emplace_back([&, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) f(i);
        });
    }
    for (auto& t : threads) t.join();
}

} // namespace sphtrop
