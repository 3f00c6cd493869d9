#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <vector>

#include "helpers.hpp"
#include "oracle.hpp"
#include "search.hpp"

using namespace dilatekit;
using testkit::expect_error;

namespace {

SearchSpec exhaustive_spec(int64_t k, size_t size, int64_t universe) {
    SearchSpec s;
    s.k = k;
    s.set_size = size;
    s.universe = universe;
    s.mode = SearchMode::exhaustive;
    return s;
}

uint64_t oracle_form_size(const oracle::Set& a, long long m, long long k) {
    return oracle::add(oracle::dilate(a, m), oracle::dilate(a, k)).size();
}

} // namespace

TEST_CASE("family members") {
    CHECK(family_member(SetFamily::ap, 3, 5).vec() == std::vector<int64_t>{0, 1, 2, 3, 4});
    CHECK(family_member(SetFamily::ap, 9, 1).vec() == std::vector<int64_t>{0});
    CHECK(family_member(SetFamily::two_ap, 3, 5).vec() == std::vector<int64_t>{0, 1, 3, 4, 6});
    CHECK(family_member(SetFamily::two_ap, 5, 4).vec() == std::vector<int64_t>{0, 1, 5, 6});
    CHECK(family_member(SetFamily::two_ap, 3, 1).vec() == std::vector<int64_t>{0});
    CHECK(family_member(SetFamily::geometric, 3, 5).vec() == std::vector<int64_t>{0, 1, 2, 4, 8});
    CHECK(family_member(SetFamily::geometric, 3, 2).vec() == std::vector<int64_t>{0, 1});
    CHECK(family_member(SetFamily::geometric, 3, 1).vec() == std::vector<int64_t>{0});
    expect_error(errc::invalid_argument, [] { family_member(SetFamily::ap, 3, 0); });
}

TEST_CASE("sample_subset: deterministic uniform subsets") {
    IntSet a = sample_subset(7, 10, 3, 1000);
    IntSet b = sample_subset(7, 10, 3, 1000);
    CHECK(a.vec() == b.vec());
    CHECK(a.size() == 10);
    CHECK(a.min() >= 0);
    CHECK(a.max() < 1000);

    // Distinct indices and seeds key distinct streams.
    CHECK(sample_subset(7, 10, 4, 1000).vec() != a.vec());
    CHECK(sample_subset(8, 10, 3, 1000).vec() != a.vec());

    // Full-universe draw is the universe itself.
    CHECK(sample_subset(1, 6, 0, 6).vec() == std::vector<int64_t>{0, 1, 2, 3, 4, 5});

    expect_error(errc::invalid_argument, [] { sample_subset(1, 5, 0, 4); });
    expect_error(errc::invalid_argument, [] { sample_subset(1, 1, 0, 0); });
}

TEST_CASE("extremal_min: exhaustive frozen instance") {
    SearchResult r = extremal_min(exhaustive_spec(3, 3, 6));
    CHECK(r.minimum == 8);
    CHECK(r.instances_examined == 20);
    REQUIRE(!r.witnesses.empty());
    CHECK(r.witnesses.front().vec() == std::vector<int64_t>{0, 1, 3});
    for (const IntSet& w : r.witnesses) {
        CHECK(w.min() == 0); // witnesses are normalized representatives
        CHECK(evaluate_form_size(LinearForm{2, 3}, w) == 8);
    }
    REQUIRE(r.bound_comparison.has_value());
    CHECK(r.bound_comparison->bound_name == "thm");
    CHECK(r.bound_comparison->actual == 8);
    CHECK(r.bound_comparison->bound == 5);
    CHECK(r.bound_comparison->satisfied);
}

TEST_CASE("extremal_min agrees with brute force") {
    SearchResult r = extremal_min(exhaustive_spec(3, 4, 9));
    uint64_t best = ~uint64_t{0};
    uint64_t count = 0;
    oracle::combinations(9, 4, [&](const std::vector<long long>& v) {
        best = std::min(best, oracle_form_size(oracle::from(v), 2, 3));
        ++count;
    });
    CHECK(r.minimum == best);
    CHECK(r.instances_examined == count);
    for (const IntSet& w : r.witnesses)
        CHECK(oracle_form_size(testkit::to_oracle(w), 2, 3) == best);
}

TEST_CASE("extremal_min: size-2 sets all collapse to {0,1}") {
    SearchResult r = extremal_min(exhaustive_spec(3, 2, 5));
    CHECK(r.minimum == 4);
    CHECK(r.instances_examined == 10);
    REQUIRE(r.witnesses.size() == 1); // every pair normalizes to the same set
    CHECK(r.witnesses.front().vec() == std::vector<int64_t>{0, 1});
}

TEST_CASE("extremal_min: structured family sweep") {
    SearchSpec s;
    s.k = 3;
    s.mode = SearchMode::structured;
    s.family = SetFamily::ap;
    s.set_size = 3;
    s.size_max = 6;
    SearchResult r = extremal_min(s);
    CHECK(r.instances_examined == 4);
    CHECK(r.minimum == 9); // |2A+3A| grows along the family, so n=3 wins
    REQUIRE(r.witnesses.size() == 1);
    CHECK(r.witnesses.front().vec() == std::vector<int64_t>{0, 1, 2});
    REQUIRE(r.bound_comparison.has_value());
    CHECK(r.bound_comparison->margin == 4);
}

TEST_CASE("extremal_min: random mode is reproducible") {
    SearchSpec s;
    s.k = 3;
    s.set_size = 8;
    s.universe = 50;
    s.mode = SearchMode::random;
    s.samples = 6;
    s.seed = 99;
    SearchResult r1 = extremal_min(s);
    SearchResult r2 = extremal_min(s);
    CHECK(r1.instances_examined == 6);
    CHECK(r1.minimum == r2.minimum);
    REQUIRE(r1.witnesses.size() == r2.witnesses.size());
    for (size_t i = 0; i < r1.witnesses.size(); ++i)
        CHECK(r1.witnesses[i].vec() == r2.witnesses[i].vec());
}

TEST_CASE("extremal_min: no theorem comparison off the odd-k binary form") {
    SearchSpec s = exhaustive_spec(3, 2, 4);
    s.m = 1;
    SearchResult r = extremal_min(s);
    CHECK(r.minimum == 4); // |A+3A| over normalized pairs {0,1}
    CHECK(!r.bound_comparison.has_value());
}

TEST_CASE("search input validation") {
    expect_error(errc::invalid_argument, [] { extremal_min(exhaustive_spec(3, 0, 6)); });
    expect_error(errc::invalid_argument, [] { extremal_min(exhaustive_spec(3, 4, 0)); });
    expect_error(errc::invalid_argument, [] { extremal_min(exhaustive_spec(3, 7, 6)); });
    // binomial(40, 10) exceeds the default budget.
    expect_error(errc::budget_exceeded, [] { extremal_min(exhaustive_spec(3, 10, 40)); });
    // All-subsets enumeration (set_size 0) is a hunt-only mode; there the
    // budget gate sees 2^24 - 1 instances, and universes past 62 cannot be
    // counted in 64 bits at all.
    expect_error(errc::budget_exceeded,
                 [] { hunt_counterexamples(exhaustive_spec(3, 0, 24), "delta_sum"); });
    expect_error(errc::budget_exceeded,
                 [] { hunt_counterexamples(exhaustive_spec(3, 0, 63), "delta_sum"); });

    SearchSpec r;
    r.set_size = 5;
    r.universe = 20;
    r.mode = SearchMode::random;
    r.samples = 0;
    expect_error(errc::invalid_argument, [&] { extremal_min(r); });

    SearchSpec st;
    st.mode = SearchMode::structured;
    st.set_size = 0;
    expect_error(errc::invalid_argument, [&] { extremal_min(st); });
}

TEST_CASE("hunt: theorem bound over random samples") {
    SearchSpec s;
    s.k = 3;
    s.set_size = 10;
    s.size_max = 12;
    s.universe = 60;
    s.mode = SearchMode::random;
    s.samples = 5;
    s.seed = 7;
    HuntResult h = hunt_counterexamples(s, "thm");
    CHECK(h.bound_name == "thm");
    CHECK(h.instances == 15); // 3 sizes x 5 samples
    CHECK(h.hypotheses_met == 0); // far below the size threshold
    CHECK(h.violations.empty());
    CHECK(!h.min_margin.has_value());
}

TEST_CASE("hunt: theorem bound exhaustive small universe") {
    HuntResult h = hunt_counterexamples(exhaustive_spec(3, 4, 10), "thm");
    CHECK(h.instances == 210);
    CHECK(h.hypotheses_met == 0);
    CHECK(h.violations.empty());
}

TEST_CASE("hunt: full_residue tracks transversal sets") {
    HuntResult h = hunt_counterexamples(exhaustive_spec(3, 3, 6), "full_residue");
    CHECK(h.instances == 20);
    CHECK(h.hypotheses_met == 8); // one choice from each residue class of [0,6)
    CHECK(h.violations.empty());
    REQUIRE(h.min_margin.has_value());
    CHECK(*h.min_margin == 0); // transversal triples sit exactly on the bound
}

TEST_CASE("hunt: delta_sum over all subsets of a small universe") {
    SearchSpec s = exhaustive_spec(3, 0, 8);
    HuntResult h = hunt_counterexamples(s, "delta_sum");
    CHECK(h.instances == 255);
    CHECK(h.hypotheses_met == 255); // unconditional inequality
    CHECK(h.violations.empty());
    REQUIRE(h.min_margin.has_value());
    CHECK(*h.min_margin >= 0);
}

TEST_CASE("hunt: pair bound is never violated") {
    HuntResult h = hunt_counterexamples(exhaustive_spec(3, 2, 4), "pair");
    CHECK(h.instances == 6);
    CHECK(h.hypotheses_met == 6);
    CHECK(h.violations.empty());
}

TEST_CASE("hunt: class parity predicate instances") {
    SearchSpec s = exhaustive_spec(9, 0, 8);
    HuntResult h = hunt_counterexamples(s, "class_parity");
    // Every element of [0,8) is its own residue mod 9, so each subset
    // contributes one predicate instance per element.
    CHECK(h.instances == 1024);
    CHECK(h.violations.empty());
    // Singleton classes never have a gain smaller than the class, so no
    // instance here is applicable.
    CHECK(h.hypotheses_met == 0);

    // With k = 3 the classes have real sizes: [0,8) splits into residue
    // groups {0,3,6}, {1,4,7}, {2,5}, and the subsets meeting each group
    // contribute one instance per nonempty class: 224 + 224 + 192.
    HuntResult h3 = hunt_counterexamples(exhaustive_spec(3, 0, 8), "class_parity");
    CHECK(h3.instances == 640);
    CHECK(h3.hypotheses_met > 0); // e.g. {0,1,3}: gain {3} below class {0,3}
    CHECK(h3.violations.empty());
}

TEST_CASE("hunt: gain floors are scoped to their modulus kind") {
    SearchSpec pp = exhaustive_spec(15, 0, 6);
    CHECK(hunt_counterexamples(pp, "delta_floor_pp").instances == 0);
    SearchSpec sp = exhaustive_spec(9, 0, 6);
    CHECK(hunt_counterexamples(sp, "delta_floor_sp").instances == 0);

    // In-scope runs stay clean.
    HuntResult hp = hunt_counterexamples(exhaustive_spec(9, 0, 7), "delta_floor_pp");
    CHECK(hp.violations.empty());
    HuntResult hs = hunt_counterexamples(exhaustive_spec(15, 0, 7), "delta_floor_sp");
    CHECK(hs.instances > 0);
    CHECK(hs.violations.empty());
}

TEST_CASE("hunt: unknown bound names the registry") {
    expect_error(errc::unknown_bound,
                 [] { hunt_counterexamples(exhaustive_spec(3, 2, 4), "nope"); });
}

TEST_CASE("bound registry names") {
    std::vector<std::string> names = bound_registry_names();
    std::vector<std::string> expected = {"coarse",       "delta_sum",      "full_residue",
                                         "min_growth",   "pair",           "thm",
                                         "class_parity", "delta_floor_pp", "delta_floor_sp"};
    CHECK(names == expected);
}

TEST_CASE("margin_profile: progressions sit a constant above the bound") {
    std::vector<MarginRow> rows = margin_profile(3, 2, 20, SetFamily::ap);
    REQUIRE(rows.size() == 19);
    for (size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].n == i + 2);
        CHECK(rows[i].size == rows[i].n);
        CHECK(rows[i].margin == 4);
    }
    CHECK(rows[0].actual == 4);   // n=2: the square regime
    CHECK(rows[18].actual == 94); // n=20: 5n - 6

    for (const MarginRow& row : margin_profile(9, 9, 15, SetFamily::ap))
        CHECK(row.margin == 70);

    expect_error(errc::invalid_argument, [] { margin_profile(3, 0, 5, SetFamily::ap); });
    expect_error(errc::invalid_argument, [] { margin_profile(3, 6, 2, SetFamily::ap); });
}

TEST_CASE("regime_sweep: prime-power modulus smoke") {
    RegimeSweepResult r = regime_sweep(9, 8, {12}, 3, 60, 5);
    CHECK(r.instances == 258); // 2^8 - 1 subsets plus 3 samples
    CHECK(r.thm.evaluated == 258);
    CHECK(r.thm.hypotheses_met == 0);
    CHECK(r.thm.violations == 0);
    CHECK(r.coarse.evaluated == 258);
    CHECK(r.coarse.hypotheses_met == 258);
    CHECK(r.coarse.inequality_failures == 0); // bound is deeply negative at this scale
    CHECK(r.parity.evaluated >= 1024);
    CHECK(r.parity.violations == 0);
    CHECK(r.floor_pp.violations == 0);
    CHECK(r.floor_sp.evaluated == 0); // semiprime lemma out of scope for k=9
    CHECK(r.total_violations() == 0);
}

TEST_CASE("regime_sweep: semiprime modulus smoke") {
    RegimeSweepResult r = regime_sweep(15, 6, {}, 0, 10, 1);
    CHECK(r.instances == 63);
    CHECK(r.floor_pp.evaluated == 0);
    // Sets with j >= 2 classes contribute every partial class under both
    // prime orderings: sum over sizes s >= 2 of C(6,s) * 2s.
    CHECK(r.floor_sp.evaluated == 372);
    CHECK(r.total_violations() == 0);
}

TEST_CASE("regime_sweep input validation") {
    expect_error(errc::invalid_argument, [] { regime_sweep(9, 0, {}, 0, 10, 1); });
    expect_error(errc::invalid_argument, [] { regime_sweep(9, 25, {}, 0, 10, 1); });
    expect_error(errc::invalid_argument, [] { regime_sweep(6, 8, {}, 0, 10, 1); });
    expect_error(errc::invalid_argument, [] { regime_sweep(1, 8, {}, 0, 10, 1); });
}
