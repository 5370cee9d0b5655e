#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hyperarr {

/// Runs work(shard) for shard = 0..shards-1 on up to `jobs` threads and
/// folds the results in shard order, so the outcome does not depend on jobs.
template <class Result, class Work, class Combine>
Result sharded_reduce(std::size_t shards, std::size_t jobs, Result init, Work&& work, Combine&& combine) {
    std::vector<Result> parts(shards);
    jobs = std::max<std::size_t>(1, std::min(jobs, shards));
    if (jobs == 1) {
        for (std::size_t s = 0; s < shards; ++s) parts[s] = work(s);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < jobs; ++t) {
            pool.emplace_back([&] {
                for (std::size_t s; (s = next.fetch_add(1)) < shards;) {
                    try {
                        parts[s] = work(s);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                    }
                }
            });
        }
        for (auto& th : pool) th.join();
        if (failure) std::rethrow_exception(failure);
    }
    for (auto& p : parts) init = combine(std::move(init), std::move(p));
    return init;
}

inline std::size_t default_jobs() {
    const auto hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

}  // namespace hyperarr
