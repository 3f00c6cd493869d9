#pragma once

#include <atomic>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>

#include "error.hpp"

namespace dilatekit {

inline int64_t checked_add(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        fail(errc::overflow, "integer overflow in " + std::to_string(a) + " + " + std::to_string(b));
    return r;
}

inline int64_t checked_mul(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        fail(errc::overflow, "integer overflow in " + std::to_string(a) + " * " + std::to_string(b));
    return r;
}

// gcd of successive differences of a strictly increasing sequence; 0 for a singleton.
inline int64_t diff_gcd(std::span<const int64_t> v) {
    int64_t g = 0;
    for (size_t i = 1; i < v.size(); ++i) {
        // Differences of in-range int64 values can exceed the positive range only
        // when mixing extreme signs; we use unsigned subtraction to stay defined.
        uint64_t d = static_cast<uint64_t>(v[i]) - static_cast<uint64_t>(v[i - 1]);
        g = static_cast<int64_t>(std::gcd(static_cast<uint64_t>(g), d));
        if (g == 1) break;
    }
    return g;
}

namespace config {

// Global knobs set once at startup (CLI flags / environment); reads are lock-free.
inline std::atomic<int>& threads_knob() {
    static std::atomic<int> v{0}; // 0 = auto (hardware concurrency)
    return v;
}
inline std::atomic<uint64_t>& bit_window_knob() {
    static std::atomic<uint64_t> v{uint64_t{1} << 28}; // dense-window limit, in bits
    return v;
}

inline void set_threads(int n) { threads_knob().store(n < 0 ? 0 : n); }
inline int threads() { return threads_knob().load(); }
inline void set_bit_window(uint64_t bits) { bit_window_knob().store(bits < 64 ? 64 : bits); }
inline uint64_t bit_window() { return bit_window_knob().load(); }

} // namespace config

// splitmix64: deterministic across platforms, unlike <random> distributions.
struct SplitMix64 {
    uint64_t state;

    explicit SplitMix64(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform draw from [0, n) via rejection; independent of library RNG internals.
    uint64_t below(uint64_t n) {
        if (n == 0) fail(errc::invalid_argument, "random draw from empty range");
        uint64_t limit = ~uint64_t{0} - ~uint64_t{0} % n;
        uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % n;
    }
};

} // namespace dilatekit
