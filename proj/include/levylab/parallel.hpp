#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace levylab {

// Run fn(i) for i in [0, n) on up to `threads` workers. Each index owns its
// seed-derived stream and its output slot, so results do not depend on the
// thread count.
inline void parallel_for(std::uint64_t n, int threads,
                         const std::function<void(std::uint64_t)>& fn) {
    if (threads <= 1 || n < 2) {
        for (std::uint64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const auto workers = static_cast<std::uint64_t>(threads);
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    pool.reserve(workers);
    for (std::uint64_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                const std::uint64_t lo = n * w / workers;
                const std::uint64_t hi = n * (w + 1) / workers;
                for (std::uint64_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& err : errors) {
        if (err) std::rethrow_exception(err);
    }
}

} // namespace levylab
