// Minimal fork-join helper. Work items are claimed dynamically, but callers
// always write results into slots indexed by item, so output order never
// depends on the schedule.
#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace cdiff {

namespace detail {
inline std::atomic<unsigned>& thread_override() {
    static std::atomic<unsigned> v{0};
    return v;
}
}  // namespace detail

/// Worker count: explicit override, else CDIFF_THREADS, else hardware concurrency.
inline unsigned thread_count() {
    if (unsigned o = detail::thread_override().load()) return o;
    if (const char* env = std::getenv("CDIFF_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (...) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// 0 restores the default.
inline void set_thread_count(unsigned n) { detail::thread_override().store(n); }

/// Calls body(i) for every i in [0, count). Exceptions from any worker are
/// rethrown on the calling thread.
template <class Body>
void parallel_for(std::size_t count, Body&& body, unsigned threads = 0) {
    if (threads == 0) threads = thread_count();
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto worker = [&] {
        try {
            for (std::size_t i; (i = next.fetch_add(1)) < count;) body(i);
        } catch (...) {
            std::lock_guard lock(error_mu);
            if (!error) error = std::current_exception();
            next.store(count);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads - 1);
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace cdiff
