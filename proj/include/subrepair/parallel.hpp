#pragma once

#include <algorithm>
#include <functional>
#include <thread>
#include <vector>

namespace subrepair {

// Number of contiguous chunks [0, n) is split into for `threads` workers.
inline int chunk_count(int n, int threads) {
    if (n <= 0) return 0;
    return std::max(1, std::min(threads, n));
}

// Runs fn(chunk, begin, end) over contiguous chunks of [0, n). Chunk
// boundaries depend only on n and threads, so per-chunk buffers indexed by
// `chunk` merge deterministically regardless of scheduling.
inline void parallel_chunks(int n, int threads,
                            const std::function<void(int, int, int)>& fn) {
    const int chunks = chunk_count(n, threads);
    if (chunks == 0) return;
    if (chunks == 1) {
        fn(0, 0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(chunks - 1);
    const int base = n / chunks;
    const int extra = n % chunks;
    int begin = 0;
    for (int c = 0; c < chunks; ++c) {
        const int end = begin + base + (c < extra ? 1 : 0);
        if (c + 1 == chunks) {
            fn(c, begin, end);
        } else {
            pool.emplace_back(fn, c, begin, end);
        }
        begin = end;
    }
    for (std::thread& t : pool) t.join();
}

} // namespace subrepair
