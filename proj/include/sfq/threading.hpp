#pragma once

#include <atomic>
#include <complex>
#include <future>
#include <vector>

namespace sfq {

namespace detail {
inline std::atomic<int>& thread_count_ref() {
    static std::atomic<int> n{1};
    return n;
}
}  // namespace detail

/// Number of worker threads used by lattice-sum evaluation (default 1).
inline int max_threads() { return detail::thread_count_ref().load(); }

inline void set_max_threads(int n) { detail::thread_count_ref().store(n < 1 ? 1 : n); }

/// Sums term(i) for i in [0, count). Single-threaded summation is a plain
/// ascending loop; with p threads the index range splits into p contiguous
/// chunks whose partial sums are combined in chunk order, so the result is
/// deterministic for a fixed thread count.
template <typename Term>
std::complex<double> chunked_sum(std::size_t count, Term term) {
    const int threads = max_threads();
    if (threads <= 1 || count < 1024) {
        std::complex<double> s = 0.0;
        for (std::size_t i = 0; i < count; ++i) s += term(i);
        return s;
    }
    const std::size_t chunk = (count + threads - 1) / threads;
    std::vector<std::future<std::complex<double>>> parts;
    for (int c = 0; c < threads; ++c) {
        const std::size_t lo = c * chunk;
        const std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        parts.push_back(std::async(std::launch::async, [lo, hi, &term] {
            std::complex<double> s = 0.0;
            for (std::size_t i = lo; i < hi; ++i) s += term(i);
            return s;
        }));
    }
    std::complex<double> s = 0.0;
    for (auto& p : parts) s += p.get();
    return s;
}

}  // namespace sfq
