#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "intset.hpp"
#include "report.hpp"

namespace dilatekit {

enum class SearchMode { exhaustive, random, structured };
enum class SetFamily { ap, two_ap, geometric };

struct SearchSpec {
    int64_t k = 3;
    int64_t m = 2;           // the companion dilation factor in m*A + k*A
    size_t set_size = 0;     // exact size; 0 in exhaustive hunts means all sizes
    size_t size_max = 0;     // inclusive upper size for ranges; 0 means set_size
    int64_t universe = 0;    // sets are drawn from [0, universe)
    SearchMode mode = SearchMode::exhaustive;
    uint64_t samples = 0;    // per size, random mode
    uint64_t seed = 0;
    SetFamily family = SetFamily::ap;
    uint64_t budget = 10'000'000; // enumeration cap for exhaustive mode
    size_t witness_cap = 16;
    SumPath path = SumPath::automatic;
};

struct SearchResult {
    SearchSpec spec;
    uint64_t minimum = 0;
    std::vector<IntSet> witnesses; // normalized representatives, deduped, capped
    uint64_t instances_examined = 0;
    std::optional<BoundReport> bound_comparison; // theorem report for the first witness
};

// Minimize |m*A + k*A| over the requested instance space.
SearchResult extremal_min(const SearchSpec& spec);

struct HuntViolation {
    BoundReport report;
    std::vector<int64_t> set; // echoed when small enough
    size_t set_size = 0;
    size_t class_index = 0;    // class-level lemma hunts
    std::string ordering;      // prime ordering for semiprime lemma hunts
    std::string detail;
    bool confirmed_naive = false; // failure re-established on the definitional path
};

struct HuntResult {
    std::string bound_name;
    SearchSpec spec;
    uint64_t instances = 0;
    uint64_t hypotheses_met = 0;
    std::vector<HuntViolation> violations;
    std::optional<BigInt> min_margin; // over hypothesis-met instances
};

// Evaluate one registered bound over an instance space, recording instances
// whose hypotheses hold while the bound fails. Registry names:
// thm, coarse, pair, min_growth, full_residue, delta_sum,
// class_parity, delta_floor_pp, delta_floor_sp.
HuntResult hunt_counterexamples(const SearchSpec& spec, const std::string& bound_name);
std::vector<std::string> bound_registry_names();

struct MarginRow {
    uint64_t n;
    uint64_t size;
    uint64_t actual;
    BigInt bound;
    BigInt margin;
};
// Actual vs target bound along a structured family, one row per n.
std::vector<MarginRow> margin_profile(int64_t k, uint64_t n_from, uint64_t n_to, SetFamily family,
                                      SumPath path = SumPath::automatic);

IntSet family_member(SetFamily family, int64_t k, uint64_t n);
// Deterministic uniform size-subset of [0, universe); the stream is keyed by
// (seed, size, index) so runs are reproducible and order-independent.
IntSet sample_subset(uint64_t seed, size_t size, uint64_t index, int64_t universe);

struct RegimeViolation {
    std::string check;
    std::vector<int64_t> set;
    size_t set_size = 0;
    size_t class_index = 0;
    std::string ordering;
    std::string detail;
    bool confirmed_naive = false;
};

struct BoundTally {
    std::string bound_name;
    uint64_t evaluated = 0;
    uint64_t hypotheses_met = 0;
    // Inequality failures outside the proven regime are data, not violations;
    // each is re-established on the definitional path before being reported.
    uint64_t inequality_failures = 0;
    uint64_t violations = 0; // hypothesis-met failures
    std::vector<RegimeViolation> examples;
};

struct LemmaTally {
    std::string lemma;
    uint64_t evaluated = 0;
    uint64_t applicable = 0; // in scope with every hypothesis met
    uint64_t violations = 0;
    std::vector<RegimeViolation> examples;
};

struct RegimeSweepResult {
    int64_t k = 0;
    int64_t exhaustive_universe = 0; // all nonempty subsets of [0, exhaustive_universe)
    std::vector<size_t> sample_sizes;
    uint64_t samples_per_size = 0;
    int64_t sample_universe = 0;
    uint64_t seed = 0;
    uint64_t instances = 0;
    BoundTally thm, coarse;
    LemmaTally parity, floor_pp, floor_sp;
    uint64_t total_violations() const {
        return thm.violations + coarse.violations + parity.violations + floor_pp.violations +
               floor_sp.violations;
    }
};

// Per-instance sweep of the theorem bound, the coarse bound, and the class
// lemma predicates over an exhaustive small universe plus seeded samples.
RegimeSweepResult regime_sweep(int64_t k, int64_t exhaustive_universe,
                               std::vector<size_t> sample_sizes, uint64_t samples_per_size,
                               int64_t sample_universe, uint64_t seed);

} // namespace dilatekit
