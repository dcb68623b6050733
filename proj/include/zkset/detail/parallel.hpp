#pragma once

#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace zkset::detail {

// Runs body(i) for i in [0, n) across `degree` threads over contiguous
// chunks. Callers write to disjoint per-index slots, so the result is
// identical to the sequential order.
template <class Body>
void parallel_for(size_t n, unsigned degree, Body&& body) {
    if (n == 0) return;
    size_t workers = degree == 0 ? 1 : std::min<size_t>(degree, n);
    if (workers <= 1) {
        for (size_t i = 0; i < n; i++) body(i);
        return;
    }
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> threads;
    threads.reserve(workers);
    size_t chunk = (n + workers - 1) / workers;
    for (size_t w = 0; w < workers; w++) {
        size_t lo = w * chunk;
        size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        threads.emplace_back([&, lo, hi] {
            try {
                for (size_t i = lo; i < hi; i++) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace zkset::detail
