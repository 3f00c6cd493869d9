#pragma once

#include <stdexcept>
#include <string>

namespace dilatekit {

// Error categories mirrored one-to-one by the C API status codes.
enum class errc {
    invalid_argument = 1,
    overflow = 2,
    empty_set = 3,
    precondition = 4,
    modulus_mismatch = 5,
    index_range = 6,
    budget_exceeded = 7,
    parse = 8,
    io = 9,
    unknown_bound = 10,
    internal = 11,
};

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

} // namespace dilatekit
