#include "uclab/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace uclab {

namespace {
std::atomic<unsigned> g_threads{std::max(1u, std::thread::hardware_concurrency())};
}

void set_default_threads(unsigned threads) {
    g_threads.store(threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads);
}

unsigned default_threads() { return g_threads.load(); }

void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t, std::size_t)> &body) {
    if (n == 0)
        return;
    if (threads == 0)
        threads = default_threads();
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    if (threads <= 1) {
        body(0, n);
        return;
    }
    const std::size_t chunks = std::min<std::size_t>(n, std::size_t{threads} * 8);
    const std::size_t chunk = (n + chunks - 1) / chunks;
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_lock;
    auto worker = [&] {
        for (;;) {
            const std::size_t begin = next.fetch_add(chunk);
            if (begin >= n)
                return;
            try {
                body(begin, std::min(n, begin + chunk));
            } catch (...) {
                std::lock_guard lock(failure_lock);
                if (!failure)
                    failure = std::current_exception();
                next.store(n);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t)
        pool.emplace_back(worker);
    worker();
    for (auto &t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
}

} // namespace uclab
