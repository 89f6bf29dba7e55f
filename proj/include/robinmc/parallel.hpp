#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace robinmc {

// Worker cap shared by all path loops. Results never depend on it: each
// loop index owns its RNG streams and writes its own output slot.
void set_max_threads(unsigned n);
unsigned max_threads();

// Runs fn(i) for i in [0, n) on up to max_threads() workers, chunked.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(max_threads(), n ? n : 1));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    const std::size_t chunk = std::max<std::size_t>(1, n / (workers * 16));
    auto work = [&] {
        for (;;) {
            const std::size_t begin = next.fetch_add(chunk);
            if (begin >= n) return;
            const std::size_t end = std::min(n, begin + chunk);
            for (std::size_t i = begin; i < end; ++i) fn(i);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
}

}  // namespace robinmc
