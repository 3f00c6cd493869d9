#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"

namespace dilatekit {

// Finite subset of the integers, stored as a strictly increasing vector.
class IntSet {
public:
    IntSet() = default;

    // Takes ownership; validates strict monotonicity.
    static IntSet from_sorted_unique(std::vector<int64_t> v);
    // Sorts and deduplicates arbitrary input.
    static IntSet from_values(std::span<const int64_t> v);
    static IntSet from_values(std::initializer_list<int64_t> v);
    // Contiguous run {lo, lo+1, ..., hi}.
    static IntSet interval(int64_t lo, int64_t hi);

    size_t size() const { return elems_.size(); }
    bool empty() const { return elems_.empty(); }
    int64_t min() const;
    int64_t max() const;
    bool contains(int64_t v) const;
    std::span<const int64_t> elements() const { return elems_; }
    const std::vector<int64_t>& vec() const { return elems_; }

    bool operator==(const IntSet& o) const { return elems_ == o.elems_; }

private:
    std::vector<int64_t> elems_;
};

// Nonzero integer coefficients u_1..u_n of the form u_1*A + ... + u_n*A.
class LinearForm {
public:
    explicit LinearForm(std::vector<int64_t> coeffs);
    LinearForm(std::initializer_list<int64_t> coeffs);

    size_t arity() const { return coeffs_.size(); }
    int64_t coeff(size_t i) const { return coeffs_[i]; }
    std::span<const int64_t> coeffs() const { return coeffs_; }

private:
    std::vector<int64_t> coeffs_;
};

// Binary form (m, k) in the normalized shape k >= |m| >= 1, m != 0, gcd(m, k) = 1.
bool validate_normalized_form(const LinearForm& f);

enum class SumPath {
    automatic, // dense bit window when the range fits, merge otherwise
    bits,      // force the dense bit-window kernel
    merge,     // force the k-way merge of shifted copies
    naive,     // definitional pairwise enumeration; exempt from performance budgets
};

IntSet dilate(const IntSet& a, int64_t factor);
IntSet minkowski_sum(const IntSet& a, const IntSet& b, SumPath path = SumPath::automatic);
uint64_t minkowski_sum_size(const IntSet& a, const IntSet& b, SumPath path = SumPath::automatic);
IntSet evaluate_form(const LinearForm& f, const IntSet& a, SumPath path = SumPath::automatic);
uint64_t evaluate_form_size(const LinearForm& f, const IntSet& a, SumPath path = SumPath::automatic);

// Elements of a not in b.
IntSet difference(const IntSet& a, const IntSet& b);

// Affine reduction a = scale * normalized + shift with min(normalized) = 0 and
// gcd of differences 1; a singleton normalizes to ({0}, shift = a, scale = 1).
struct Normalized {
    IntSet set;
    int64_t shift;
    int64_t scale;
};
Normalized normalize_set(const IntSet& a);

// Set files: text (one decimal integer per line) or a JSON array of integers.
// Duplicates are tolerated on ingest and reported back.
struct ReadResult {
    IntSet set;
    uint64_t duplicates;
};
ReadResult read_set_file(const std::string& path);
ReadResult parse_set_text(const std::string& content, const std::string& origin);
void write_set_file(const IntSet& a, const std::string& path, bool as_json);

} // namespace dilatekit
