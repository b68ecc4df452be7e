#ifndef AUTOLOOP_PARALLEL_HPP
#define AUTOLOOP_PARALLEL_HPP

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace autoloop {

/// Worker count: hardware concurrency capped by AUTOLOOP_THREADS.
inline unsigned worker_count() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("AUTOLOOP_THREADS")) {
        long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && static_cast<unsigned>(cap) < hw) hw = static_cast<unsigned>(cap);
    }
    return hw;
}

/// Runs fn(chunk_index, begin, end) over [0, n) split into contiguous chunks,
/// one chunk per worker. Results must be combined by the caller in chunk
/// order to stay deterministic.
inline void parallel_chunks(int n, const std::function<void(unsigned, int, int)>& fn) {
    unsigned workers = worker_count();
    if (n <= 0) return;
    if (workers <= 1 || n < 64) {
        fn(0, 0, n);
        return;
    }
    if (static_cast<int>(workers) > n) workers = static_cast<unsigned>(n);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    int base = n / static_cast<int>(workers), extra = n % static_cast<int>(workers);
    int begin = 0;
    for (unsigned w = 0; w < workers; ++w) {
        int len = base + (static_cast<int>(w) < extra ? 1 : 0);
        int end = begin + len;
        threads.emplace_back(fn, w, begin, end);
        begin = end;
    }
    for (auto& t : threads) t.join();
}

} // namespace autoloop

#endif
