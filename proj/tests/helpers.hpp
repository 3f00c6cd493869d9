#pragma once

#include <doctest.h>

#include <string>
#include <vector>

#include "error.hpp"
#include "intset.hpp"
#include "oracle.hpp"

namespace testkit {

inline dilatekit::IntSet to_intset(const oracle::Set& s) {
    return dilatekit::IntSet::from_sorted_unique(std::vector<int64_t>(s.begin(), s.end()));
}

inline dilatekit::IntSet to_intset(const std::vector<long long>& v) {
    return dilatekit::IntSet::from_values(std::vector<int64_t>(v.begin(), v.end()));
}

inline oracle::Set to_oracle(const dilatekit::IntSet& a) {
    return oracle::Set(a.elements().begin(), a.elements().end());
}

template <class F>
void expect_error(dilatekit::errc code, F&& f) {
    try {
        f();
        FAIL_CHECK("expected an error with code " << static_cast<int>(code));
    } catch (const dilatekit::Error& e) {
        CHECK(e.code() == code);
    }
}

} // namespace testkit
