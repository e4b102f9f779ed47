#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace vkh {

// Runs body(i) for i in [0, n) on up to `jobs` threads. Work is handed out
// dynamically in chunks; the first exception thrown is rethrown.
template <class Body>
void parallel_for(std::size_t n, int jobs, Body&& body, std::size_t chunk = 1) {
    const std::size_t workers = std::min<std::size_t>(std::max(1, jobs), (n + chunk - 1) / std::max<std::size_t>(chunk, 1));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto run = [&] {
        for (;;) {
            std::size_t start = next.fetch_add(chunk);
            if (start >= n) return;
            std::size_t stop = std::min(n, start + chunk);
            try {
                for (std::size_t i = start; i < stop; ++i) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!error) error = std::current_exception();
                next.store(n);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

} // namespace vkh
