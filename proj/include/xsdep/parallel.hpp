#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace xsdep {

/// Runs fn(i) for i in [0, total) on up to n_threads workers pulling from a
/// shared counter. Callers must make fn(i) depend only on i (results land
/// in preassigned slots), so the output is identical whatever the schedule.
/// The first exception thrown by any task is rethrown on the caller.
inline void parallel_for(long total, int n_threads,
                         const std::function<void(long)>& fn) {
    if (total <= 0) return;
    if (n_threads <= 1 || total == 1) {
        for (long i = 0; i < total; ++i) fn(i);
        return;
    }
    std::atomic<long> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        while (!failed.load(std::memory_order_relaxed)) {
            const long i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= total) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const int workers = static_cast<int>(
        std::min<long>(n_threads, total));
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace xsdep
