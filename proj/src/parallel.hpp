#pragma once

#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

#include "util.hpp"

namespace dilatekit {

inline int effective_threads() {
    int n = config::threads();
    if (n <= 0) {
        unsigned hc = std::thread::hardware_concurrency();
        n = hc == 0 ? 1 : static_cast<int>(hc);
    }
    return n;
}

// Runs f(chunk_index, begin, end) over a fixed deterministic partition of [0, n).
// Chunk boundaries depend only on n and the thread setting, so per-chunk
// accumulators merged in chunk order give scheduling-independent results.
template <class F>
void parallel_chunks(size_t n, F&& f) {
    size_t workers = static_cast<size_t>(effective_threads());
    if (workers > n) workers = n == 0 ? 1 : n;
    if (workers <= 1) {
        f(size_t{0}, size_t{0}, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::vector<std::exception_ptr> errors(workers);
    size_t chunk = (n + workers - 1) / workers;
    for (size_t w = 0; w < workers; ++w) {
        size_t begin = w * chunk;
        size_t end = begin + chunk < n ? begin + chunk : n;
        pool.emplace_back([&, w, begin, end] {
            try {
                f(w, begin, end);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace dilatekit
