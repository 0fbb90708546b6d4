#pragma once

#include <algorithm>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace pc {

// Runs fn(chunk_index) for chunk_index in [0, chunks) over `threads` workers.
// Chunks are claimed atomically in index order; the first exception wins and
// is rethrown on the caller thread.
inline void parallel_chunks(int chunks, int threads, const std::function<void(int)>& fn) {
    threads = std::max(1, std::min(threads, chunks));
    if (threads == 1) {
        for (int i = 0; i < chunks; ++i) fn(i);
        return;
    }
    std::mutex mu;
    int next = 0;
    std::exception_ptr first_error;
    auto worker = [&]() {
        for (;;) {
            int mine;
            {
                std::lock_guard<std::mutex> lock(mu);
                if (next >= chunks || first_error) return;
                mine = next++;
            }
            try {
                fn(mine);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace pc
