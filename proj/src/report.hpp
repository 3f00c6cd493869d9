#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <vector>

namespace dilatekit {

// Bound values are exact: thresholds like 8*k^k overflow 64 bits well inside
// the supported modulus range.
using BigInt = boost::multiprecision::cpp_int;

struct Hypothesis {
    std::string name;
    bool met;
};

struct BoundReport {
    std::string bound_name;
    int64_t k = 0;     // modulus / dilation parameter of the instance
    uint64_t size = 0; // |A|
    uint64_t actual = 0;
    BigInt bound;
    BigInt margin; // actual - bound
    std::vector<Hypothesis> hypotheses;
    bool satisfied = false;
};

// A bound <= 0 holds for any nonempty set; the flag keeps that case visible.
inline BoundReport finish_report(BoundReport r) {
    r.margin = BigInt(r.actual) - r.bound;
    r.satisfied = r.margin >= 0;
    r.hypotheses.push_back({"bound_positive", r.bound > 0});
    return r;
}

inline bool all_hypotheses_met(const BoundReport& r) {
    for (const auto& h : r.hypotheses)
        if (h.name != "bound_positive" && !h.met) return false;
    return true;
}

} // namespace dilatekit
