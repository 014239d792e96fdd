#pragma once

#include <future>
#include <utility>

namespace topowave {

/// Thread cap from TOPOWAVE_THREADS (>= 1), else hardware concurrency.
unsigned max_threads();

/// Runs a and b, concurrently when more than one thread is allowed.
template <typename A, typename B>
auto run_pair(A&& a, B&& b) {
    if (max_threads() > 1) {
        auto fa = std::async(std::launch::async, std::forward<A>(a));
        auto rb = b();
        return std::make_pair(fa.get(), std::move(rb));
    }
    auto ra = a();
    auto rb = b();
    return std::make_pair(std::move(ra), std::move(rb));
}

}  // namespace topowave
