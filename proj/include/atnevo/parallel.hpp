#ifndef ATNEVO_PARALLEL_HPP
#define ATNEVO_PARALLEL_HPP

/*
 * Minimal fork-join helper. Results must not depend on the worker count, so
 * callers give every index its own derived RNG stream and parallel_for only
 * distributes indices. Nested calls run inline to avoid thread explosions.
 * ATNEVO_WORKERS overrides the worker count (1 disables threading).
 */

#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace atnevo {

inline int worker_count() {
    if (const char* env = std::getenv("ATNEVO_WORKERS")) {
        try {
            const int n = std::stoi(env);
            if (n >= 1) return n;
        } catch (const std::exception&) {
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace detail {
inline thread_local bool inside_parallel_for = false;
}

inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
    const int workers = worker_count();
    if (count == 0) return;
    if (workers <= 1 || count == 1 || detail::inside_parallel_for) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    const auto work = [&] {
        detail::inside_parallel_for = true;
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count || failed.load()) break;
            try {
                body(i);
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
                break;
            }
        }
        detail::inside_parallel_for = false;
    };

    std::vector<std::thread> threads;
    const std::size_t n_threads = std::min<std::size_t>(static_cast<std::size_t>(workers), count);
    threads.reserve(n_threads - 1);
    for (std::size_t t = 1; t < n_threads; ++t) threads.emplace_back(work);
    work();
    for (auto& th : threads) th.join();
    if (failed.load() && error) std::rethrow_exception(error);
}

}  // namespace atnevo

#endif
