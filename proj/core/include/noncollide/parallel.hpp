#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "noncollide/core.hpp"

namespace noncollide {

// Runs body(block) for block = 0..n_blocks-1 on up to `threads` workers.
// Each block writes its own output slot, so the caller reduces in block order
// and gets the same answer for every thread count.
template <class Body>
void for_each_block(std::size_t n_blocks, unsigned threads, Body&& body) {
    unsigned workers = std::min<std::size_t>(resolve_threads(threads), n_blocks);
    if (workers <= 1) {
        for (std::size_t b = 0; b < n_blocks; ++b) body(b);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t b = next.fetch_add(1);
                if (b >= n_blocks) return;
                try {
                    body(b);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    next = n_blocks;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

constexpr std::size_t kBlockSize = 1024;

inline std::size_t block_count(std::size_t samples) {
    return (samples + kBlockSize - 1) / kBlockSize;
}

}  // namespace noncollide
