#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "intset.hpp"
#include "report.hpp"

namespace dilatekit {

// Subset of Z/nZ as a bit mask. Lemma-facing operations require n >= 2; n = 1
// appears only as a degenerate coset index set.
class ModSet {
public:
    explicit ModSet(int64_t modulus);
    static ModSet of(int64_t modulus, std::initializer_list<int64_t> residues);
    static ModSet from_residues(int64_t modulus, std::span<const int64_t> residues);
    // Mask bits 0..modulus-1 taken from a word (sweep helper, modulus <= 64).
    static ModSet from_mask(int64_t modulus, uint64_t mask);

    int64_t modulus() const { return n_; }
    size_t size() const;
    bool empty() const { return size() == 0; }
    bool is_full() const { return size() == static_cast<size_t>(n_); }
    void insert(int64_t r);
    bool contains(int64_t r) const;
    std::vector<int64_t> residues() const;
    uint64_t low_mask() const { return mask_[0]; } // modulus <= 64 only

    // The set {a + shift mod n : a in this}.
    ModSet rotated(int64_t shift) const;

    bool operator==(const ModSet& o) const { return n_ == o.n_ && mask_ == o.mask_; }

private:
    int64_t n_;
    std::vector<uint64_t> mask_;
};

ModSet mod_sum(const ModSet& a, const ModSet& b);
ModSet project_mod(const IntSet& a, int64_t n);
// Number of distinct residues of a modulo n; n = 1 gives 1.
uint64_t residue_count(const IntSet& a, int64_t n);

// |A + B| >= min(n, |A| + |B| - 1) for 0 in B with B's nonzero elements units.
// Violated preconditions raise a typed precondition error naming the offender.
BoundReport chowla_check(const ModSet& a, const ModSet& b);

// If A + alpha = A, then A is a union of cosets of the subgroup generated by
// d = gcd(n, alpha): A = union over beta in I of (d * {0..n/d - 1} + beta).
struct CosetStructure {
    int64_t d;
    ModSet index; // I, a subset of Z/dZ
};
std::optional<CosetStructure> stabilizer_decompose(const ModSet& a, int64_t alpha);

// Composite k > 2, 0 in B, B within {0, q} plus units, |A + {0, q}| >= |A| + 1
// together force |A + B| >= min(k, |A| + |B| - 1).
BoundReport mixed_unit_check(const ModSet& a, int64_t q, const ModSet& b);

struct ModViolation {
    std::string kind; // which postcondition failed
    int64_t modulus = 0;
    std::vector<int64_t> a, b;
    int64_t param = 0; // alpha (stabilizer sweep) or q (mixed-unit sweep)
    uint64_t actual = 0;
    int64_t bound = 0;
};

struct SweepResult {
    std::string lemma;
    uint64_t instances_checked = 0;
    uint64_t vacuous = 0;
    std::vector<ModViolation> violations;
};

// Exhaustive sweeps over all subsets of Z/nZ (n <= 24 by construction cost).
SweepResult chowla_sweep(int64_t max_n);
SweepResult stabilizer_sweep(int64_t max_n);
SweepResult mixed_unit_sweep(std::span<const int64_t> moduli);

} // namespace dilatekit
