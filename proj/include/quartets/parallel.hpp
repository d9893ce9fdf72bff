#pragma once

// Deterministic parallel reduction for the enumeration kernels. Work is split
// into contiguous chunks over the outermost index; per-chunk partial counts
// are summed in chunk order, so the result does not depend on thread count
// or scheduling.

#include <cstdint>
#include <thread>
#include <vector>

namespace quartets::detail {

// fn(begin, end) -> partial count for the half-open index range.
template <typename Fn>
std::uint64_t chunked_sum(std::uint64_t begin, std::uint64_t end, Fn&& fn) {
    if (begin >= end) return 0;
    const std::uint64_t span = end - begin;
    unsigned threads = std::thread::hardware_concurrency();
    if (threads == 0) threads = 1;
    const std::uint64_t chunks =
        span < threads * 4ull ? span : threads * 4ull;

    std::vector<std::uint64_t> partial(chunks, 0);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            for (std::uint64_t c = t; c < chunks; c += threads) {
                const std::uint64_t lo = begin + span * c / chunks;
                const std::uint64_t hi = begin + span * (c + 1) / chunks;
                partial[c] = fn(lo, hi);
            }
        });
    }
    for (auto& th : pool) th.join();

    std::uint64_t total = 0;
    for (std::uint64_t p : partial) total += p;
    return total;
}

} // namespace quartets::detail
