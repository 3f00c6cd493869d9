#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "intset.hpp"
#include "report.hpp"
#include "residue.hpp"

namespace dilatekit {

struct Factorization {
    enum class Kind { prime_power, semiprime, other };
    Kind kind = Kind::other;
    int64_t p = 0; // prime base; smaller prime for a semiprime
    int64_t q = 0; // larger prime for a semiprime, else 0
    int alpha = 0; // exponent for a prime power
};
Factorization classify_modulus(int64_t k);

BigInt power_of(int64_t base, int64_t exp);

// |n*A + m*B| >= c_n(B)|A| + c_m(A)|B| - c_m(A) c_n(B) for coprime n, m >= 1.
BoundReport coprime_pair_check(int64_t n, int64_t m, const IntSet& a, const IntSet& b,
                               SumPath path = SumPath::automatic);
// |n*A + m*A| >= 4|A| - 4 for coprime 2 <= n < m.
BoundReport min_growth_check(int64_t n, int64_t m, const IntSet& a,
                             SumPath path = SumPath::automatic);
// |2*A + k*A| >= (k+2)|A| - 2k when A meets every residue class mod k (k odd >= 3).
BoundReport full_residue_check(int64_t k, const IntSet& a, SumPath path = SumPath::automatic);
// |2*A + k*A| >= (k+2)|A| - 4k^(k-1) for odd prime-power or semiprime k.
BoundReport coarse_bound_check(const IntSet& a, int64_t k, SumPath path = SumPath::automatic);

// (k+2)|A| - k^2 - k + 2, the target lower bound for |2*A + k*A|.
BigInt theorem_bound(int64_t k, uint64_t size);
// Evaluates |2*A + k*A| against theorem_bound. Hypothesis flags record whether
// the instance lies in the proven regime; the comparison is reported either way.
BoundReport theorem_check(const IntSet& a, int64_t k, SumPath path = SumPath::automatic);

// Sum over classes of |gain_i| is at least j(j-1), j the class count.
BoundReport delta_sum_check(const IntSet& a, int64_t k);

// Shared per-instance state for the class-level lemma checkers. The prime
// ordering is explicit so semiprime checks can run under both orderings.
struct AnalysisContext {
    int64_t k = 0;
    Factorization fact;
    int64_t base_p = 0; // the prime the divisibility tests use
    int64_t other_q = 0; // the complementary prime for a semiprime, else 0
    ResidueDecomposition decomp;
    std::vector<IntSet> deltas;             // gain sets, index 0-based
    std::optional<size_t> first_nondiv;     // least i with base_p not dividing u_i (1-based)
    std::optional<size_t> first_deficit;    // least partial i with |gain_i| < |A_i| (1-based)
    std::optional<size_t> zero_class;       // class with residue 0, if any (1-based)
    bool gcd_one = false;
    bool contains_zero = false;
    bool top_residue_zero = false; // u_1 == 0
};
AnalysisContext make_context(const IntSet& a, int64_t k);
AnalysisContext make_context_ordered(const IntSet& a, int64_t k, int64_t base_p, int64_t other_q);

// Outcome of a class-level lemma predicate on one instance. A violation is
// recorded only when every hypothesis is met, the instance is in scope, and
// the conclusion still fails; hypothesis flags never gate the evaluation.
struct LemmaOutcome {
    std::string lemma;
    size_t class_index = 0;
    std::vector<Hypothesis> hypotheses;
    bool applicable = false;
    bool conclusion_holds = true;
    bool violation = false;
    BigInt threshold;
    uint64_t observed = 0;
    std::string detail;
};

// If |gain_i| < |A_i| then the class quotient contains both parities.
LemmaOutcome class_parity_check(const AnalysisContext& ctx, size_t class_index);

// Prime-power gain floors: for partial i other than the first coprime class,
// (part small) base_p | u_i forces |gain_i| >= |A_m|;
// (part zero) base_p not dividing u_i plus a zero-residue class forces
// |gain_i| >= |A_l| for that class l.
LemmaOutcome delta_floor_primepower_check(const AnalysisContext& ctx, size_t class_index);

// Semiprime gain floors, cases split on gcd(u_2, k); runs under the context's
// prime ordering. gcd(u_2, k) outside {1, base_p} is reported not-applicable.
LemmaOutcome delta_floor_semiprime_check(const AnalysisContext& ctx, size_t class_index);

} // namespace dilatekit
