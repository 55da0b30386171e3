#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace tempodia::detail {

inline unsigned resolve_jobs(unsigned jobs) {
    if (jobs == 0)
        jobs = std::max(1u, std::thread::hardware_concurrency());
    return jobs;
}

/// Runs fn(i) for i in [0, count). Each index writes only its own output slot,
/// so the result does not depend on the job count.
template <typename Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn &&fn) {
    jobs = std::min<std::size_t>(resolve_jobs(jobs), std::max<std::size_t>(count, 1));
    if (jobs <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (unsigned w = 0; w < jobs; ++w) {
        workers.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                }
            }
        });
    }
    for (auto &w : workers)
        w.join();
    if (failure)
        std::rethrow_exception(failure);
}

} // namespace tempodia::detail
