#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace morrey::parallel {

namespace detail {
inline std::atomic<int>& override_slot() {
    static std::atomic<int> v{0};  // 0 = resolve from environment
    return v;
}
}  // namespace detail

/// Force a worker count (0 restores env/hardware resolution).
inline void set_worker_count(int n) { detail::override_slot().store(n); }

inline int worker_count() {
    const int forced = detail::override_slot().load();
    if (forced > 0) return forced;
    if (const char* env = std::getenv("MORREY_WORKERS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? int(hw) : 1;
}

/// Runs fn(i) for i in [begin, end) on a static block partition. Each index
/// is visited exactly once; callers write results into per-index slots and
/// reduce serially afterwards, so results do not depend on the worker count.
template <class Fn>
void for_indexed(int begin, int end, Fn&& fn) {
    const int n = end - begin;
    if (n <= 0) return;
    const int workers = std::min(worker_count(), n);
    if (workers <= 1) {
        for (int i = begin; i < end; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr first_error = nullptr;
    std::atomic<bool> failed{false};
    std::mutex err_mutex;
    for (int w = 0; w < workers; ++w) {
        const int lo = begin + int(std::int64_t(n) * w / workers);
        const int hi = begin + int(std::int64_t(n) * (w + 1) / workers);
        pool.emplace_back([&, lo, hi] {
            try {
                for (int i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!failed.exchange(true)) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace morrey::parallel
