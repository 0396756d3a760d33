#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace fsq {

// Worker count: FSQ_THREADS caps parallelism, default hardware concurrency.
inline size_t worker_count() {
    if (const char* env = std::getenv("FSQ_THREADS")) {
        long v = std::atol(env);
        if (v >= 1) return static_cast<size_t>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Evaluates f(i) for i in [0, n) on a worker pool; results land in index
// order, so aggregation is deterministic regardless of scheduling.
template <typename R, typename F>
std::vector<R> parallel_map(size_t n, F f) {
    std::vector<R> results(n);
    size_t workers = std::min(worker_count(), n == 0 ? size_t{1} : n);
    if (workers <= 1) {
        for (size_t i = 0; i < n; ++i) results[i] = f(i);
        return results;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto run = [&] {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                results[i] = f(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (size_t w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    return results;
}

}  // namespace fsq
