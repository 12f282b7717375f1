#include "aewalk/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace aewalk {

namespace {

unsigned default_threads()
{
    if (const char* env = std::getenv("AEWALK_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1u : hw;
}

std::atomic<unsigned>& thread_setting()
{
    static std::atomic<unsigned> n{default_threads()};
    return n;
}

}  // namespace

void set_thread_count(unsigned n) { thread_setting() = std::max(1u, n); }

unsigned thread_count() { return thread_setting(); }

void parallel_chunks(std::size_t begin, std::size_t end,
                     const std::function<void(std::size_t, std::size_t)>& body)
{
    if (end <= begin) return;
    const std::size_t total = end - begin;
    const std::size_t workers = std::min<std::size_t>(thread_count(), total);
    if (workers <= 1) {
        body(begin, end);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    std::exception_ptr failure;
    std::mutex failure_lock;
    auto run = [&](std::size_t lo, std::size_t hi) {
        try {
            body(lo, hi);
        } catch (...) {
            std::lock_guard<std::mutex> g(failure_lock);
            if (!failure) failure = std::current_exception();
        }
    };
    const std::size_t chunk = (total + workers - 1) / workers;
    for (std::size_t w = 1; w < workers; ++w) {
        std::size_t lo = begin + w * chunk;
        std::size_t hi = std::min(end, lo + chunk);
        if (lo < hi) pool.emplace_back(run, lo, hi);
    }
    run(begin, std::min(end, begin + chunk));
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace aewalk
