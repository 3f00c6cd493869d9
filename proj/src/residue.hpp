#pragma once

#include <cstdint>
#include <vector>

#include "intset.hpp"
#include "modset.hpp"

namespace dilatekit {

// One congruence class of the source set: elements = k * quotient + residue.
struct CongruenceClass {
    int64_t residue;
    IntSet quotient;
    IntSet elements;
};

// Classes of A modulo k, ordered by size descending, ties by residue ascending.
// Class indices are 1-based throughout, matching the A_1 >= A_2 >= ... order.
//
// A class is "full" when its quotient hits every residue modulo k, "partial"
// otherwise. The alternative literal reading (quotient size against k) is
// computed alongside so either split can be queried.
class ResidueDecomposition {
public:
    int64_t modulus() const { return k_; }
    size_t class_count() const { return classes_.size(); } // j = c_k(A)
    const CongruenceClass& class_at(size_t index) const;
    const std::vector<CongruenceClass>& classes() const { return classes_; }
    const IntSet& source() const { return source_; }

    const std::vector<size_t>& partial_indices() const { return partial_; }
    const std::vector<size_t>& full_indices() const { return full_; }
    const std::vector<size_t>& partial_indices_literal() const { return partial_literal_; }
    const std::vector<size_t>& full_indices_literal() const { return full_literal_; }
    bool is_partial(size_t index) const;

private:
    friend ResidueDecomposition decompose(const IntSet&, int64_t);
    int64_t k_ = 0;
    IntSet source_;
    std::vector<CongruenceClass> classes_;
    std::vector<size_t> partial_, full_;
    std::vector<size_t> partial_literal_, full_literal_;
};

ResidueDecomposition decompose(const IntSet& a, int64_t k);

// The gain class i receives from the rest of the set:
// (2*A_i + k*A) minus (2*A_i + k*A_i).
struct DeltaSet {
    size_t class_index;
    IntSet elements;
};
DeltaSet delta_set(const ResidueDecomposition& d, size_t class_index, const IntSet& source);

} // namespace dilatekit
