#pragma once

#include <cstddef>
#include <functional>

namespace aewalk {

// Worker count for row- and grid-parallel loops. Defaults to AEWALK_THREADS
// or the hardware concurrency. Results never depend on this value.
void set_thread_count(unsigned n);
unsigned thread_count();

// Calls body(lo, hi) on disjoint contiguous chunks covering [begin, end).
void parallel_chunks(std::size_t begin, std::size_t end,
                     const std::function<void(std::size_t, std::size_t)>& body);

template <class F>
void parallel_for(std::size_t begin, std::size_t end, F&& f)
{
    parallel_chunks(begin, end, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) f(i);
    });
}

}  // namespace aewalk
