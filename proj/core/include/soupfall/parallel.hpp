#pragma once

// Deterministic replica-parallel map: results are stored by index and
// reduced in index order, so the outcome does not depend on the number of
// worker threads.

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace soupfall {

template <class F>
void parallel_for_index(size_t n, unsigned threads, F&& body) {
    if (threads <= 1 || n <= 1) {
        for (size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= n) return;
            body(i);
        }
    };
    std::vector<std::thread> pool;
    unsigned k = std::min<size_t>(threads, n);
    pool.reserve(k);
    for (unsigned t = 0; t < k; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

}  // namespace soupfall
