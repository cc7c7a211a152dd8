#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace fairzk {

/// Worker cap: min(hardware threads, FAIRZK_THREADS if set). Results must not
/// depend on the split, so all uses are element-independent loops.
inline unsigned worker_count() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("FAIRZK_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && static_cast<unsigned>(v) < hw) hw = static_cast<unsigned>(v);
    }
    return hw;
}

/// Runs body(begin, end) over disjoint chunks of [0, n).
inline void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
    unsigned workers = worker_count();
    if (workers <= 1 || n < 4096) {
        body(0, n);
        return;
    }
    std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::thread> ts;
    for (unsigned w = 0; w < workers; w++) {
        std::size_t lo = w * chunk;
        if (lo >= n) break;
        std::size_t hi = std::min(n, lo + chunk);
        ts.emplace_back([&, lo, hi] { body(lo, hi); });
    }
    for (auto& t : ts) t.join();
}

}  // namespace fairzk
