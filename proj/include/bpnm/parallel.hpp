// Deterministic block-partitioned parallel loop. Work items must be
// independent; reductions belong after the join so results do not depend on
// the worker count.
#pragma once

#include <algorithm>
#include <functional>
#include <thread>
#include <vector>

namespace bpnm {

inline void parallel_for(int n, int workers,
                         const std::function<void(int)>& body) {
    if (n <= 0) return;
    workers = std::clamp(workers, 1, n);
    if (workers == 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    int chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        int lo = w * chunk;
        int hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &body] {
            for (int i = lo; i < hi; ++i) body(i);
        });
    }
    for (std::thread& t : pool) t.join();
}

}  // namespace bpnm
