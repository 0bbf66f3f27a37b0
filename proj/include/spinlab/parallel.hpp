#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace spinlab {

// Runs fn(chunk) for chunk = 0..chunks-1 on up to `threads` workers.
// Chunking is fixed by the caller, so results collected per chunk slot are
// identical for every worker count.
inline void parallel_chunks(int chunks, int threads, const std::function<void(int)>& fn) {
    if (threads <= 1 || chunks <= 1) {
        for (int c = 0; c < chunks; ++c) fn(c);
        return;
    }
    std::atomic<int> next{0};
    int workers = std::min(threads, chunks);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (true) {
                int c = next.fetch_add(1);
                if (c >= chunks) return;
                fn(c);
            }
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace spinlab
