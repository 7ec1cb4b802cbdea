#pragma once

// Deterministic worker pool.  The worker count comes from the
// OMEGA_FORGE_WORKERS environment variable (default 1); results must be
// written to preallocated slots indexed by task so the output does not
// depend on scheduling.

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace omf {

inline int worker_count() {
    const char* env = std::getenv("OMEGA_FORGE_WORKERS");
    if (!env) return 1;
    int n = std::atoi(env);
    if (n < 1) return 1;
    if (n > 64) return 64;
    return n;
}

// Runs body(i) for i in [0, n); with more than one worker the range is
// partitioned into contiguous blocks, one thread per block.  body must only
// write to per-index state.
template <typename Body>
inline void parallel_for(size_t n, const Body& body) {
    int w = worker_count();
    if (w <= 1 || n < 2) {
        for (size_t i = 0; i < n; ++i) body(i);
        return;
    }
    size_t workers = std::min<size_t>((size_t)w, n);
    std::vector<std::thread> pool;
    size_t chunk = (n + workers - 1) / workers;
    for (size_t t = 0; t < workers; ++t) {
        size_t lo = t * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &body] {
            for (size_t i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace omf
