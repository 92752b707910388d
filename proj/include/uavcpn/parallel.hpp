#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace uavcpn {

/// Runs fn(i) for i in [0, n) on up to `threads` workers, contiguous chunks.
/// Callers own determinism: fn(i) must not depend on execution order.
template <typename Fn>
void parallel_for(std::uint64_t n, unsigned threads, const Fn& fn) {
    if (threads <= 1 || n < 2) {
        for (std::uint64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(threads, n));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::uint64_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t lo = w * chunk;
        const std::uint64_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::uint64_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace uavcpn
