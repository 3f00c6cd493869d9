#include <doctest.h>

#include <numeric>

#include "helpers.hpp"
#include "modset.hpp"

using namespace dilatekit;
using testkit::expect_error;

TEST_CASE("modset basics") {
    ModSet a = ModSet::of(7, {0, 3, 5});
    CHECK(a.modulus() == 7);
    CHECK(a.size() == 3);
    CHECK(a.contains(3));
    CHECK(!a.contains(1));
    CHECK(a.residues() == std::vector<int64_t>{0, 3, 5});
    CHECK(!a.is_full());
    CHECK(ModSet::of(3, {0, 1, 2}).is_full());

    ModSet r = a.rotated(4);
    CHECK(r.residues() == std::vector<int64_t>{0, 2, 4}); // {4, 0, 2} sorted

    CHECK(ModSet::from_mask(4, 0b1010u).residues() == std::vector<int64_t>{1, 3});
    expect_error(errc::invalid_argument, [] { ModSet(0); });
    expect_error(errc::invalid_argument, [] { ModSet::from_mask(65, 1); });
    expect_error(errc::invalid_argument, [] { ModSet::from_mask(3, 0b1000u); });
    expect_error(errc::invalid_argument, [] { ModSet::of(3, {3}); });
    expect_error(errc::invalid_argument, [] { ModSet::of(3, {-1}); });
}

TEST_CASE("mod_sum") {
    ModSet a = ModSet::of(6, {0, 1});
    ModSet b = ModSet::of(6, {0, 2, 5});
    ModSet s = mod_sum(a, b);
    CHECK(s.residues() == std::vector<int64_t>{0, 1, 2, 3, 5});

    // Commutative; absorbing on the full set.
    CHECK(mod_sum(b, a) == s);
    ModSet full = ModSet::from_mask(6, 0b111111u);
    CHECK(mod_sum(a, full) == full);

    // Associative over a few triples.
    ModSet c = ModSet::of(6, {3});
    CHECK(mod_sum(mod_sum(a, b), c) == mod_sum(a, mod_sum(b, c)));

    expect_error(errc::modulus_mismatch, [] { mod_sum(ModSet::of(5, {0}), ModSet::of(6, {0})); });
}

TEST_CASE("projection and residue counts") {
    IntSet a = IntSet::from_values({-4, 0, 3, 9});
    ModSet p = project_mod(a, 3);
    CHECK(p.residues() == std::vector<int64_t>{0, 2});
    CHECK(residue_count(a, 3) == 2);
    CHECK(residue_count(a, 1) == 1);
    expect_error(errc::invalid_argument, [&] { project_mod(a, 1); });
}

TEST_CASE("chowla frozen instance and preconditions") {
    BoundReport r = chowla_check(ModSet::of(5, {0, 1}), ModSet::of(5, {0, 2}));
    CHECK(r.bound_name == "chowla");
    CHECK(r.actual == 4);
    CHECK(r.bound == 3);
    CHECK(r.satisfied);
    CHECK(all_hypotheses_met(r));

    // Saturation at the modulus: bound clamps to n.
    BoundReport s = chowla_check(ModSet::of(5, {0, 1, 2}), ModSet::of(5, {0, 1, 2}));
    CHECK(s.bound == 5);
    CHECK(s.actual == 5);

    expect_error(errc::precondition,
                 [] { chowla_check(ModSet(5), ModSet::of(5, {0})); });
    expect_error(errc::precondition,
                 [] { chowla_check(ModSet::of(5, {0}), ModSet::of(5, {1})); });
    // 2 is not a unit mod 6.
    expect_error(errc::precondition,
                 [] { chowla_check(ModSet::of(6, {0}), ModSet::of(6, {0, 2})); });
    expect_error(errc::modulus_mismatch,
                 [] { chowla_check(ModSet::of(5, {0}), ModSet::of(6, {0})); });
}

TEST_CASE("stabilizer decomposition frozen instance") {
    // A = {0, 2, 4} in Z/6Z is fixed by +2; d = gcd(6, 2) = 2, I = {0}.
    auto st = stabilizer_decompose(ModSet::of(6, {0, 2, 4}), 2);
    REQUIRE(st.has_value());
    CHECK(st->d == 2);
    CHECK(st->index.modulus() == 2);
    CHECK(st->index.residues() == std::vector<int64_t>{0});

    // Not fixed: no structure.
    CHECK(!stabilizer_decompose(ModSet::of(6, {0, 1}), 2).has_value());

    // alpha = 0 mod n is rejected.
    expect_error(errc::invalid_argument,
                 [] { stabilizer_decompose(ModSet::of(6, {0}), 6); });
    expect_error(errc::empty_set, [] { stabilizer_decompose(ModSet(6), 2); });
}

TEST_CASE("stabilizer equivalence exhaustive for small n") {
    for (int64_t n = 2; n <= 8; ++n) {
        for (uint64_t mask = 1; mask < (uint64_t{1} << n); ++mask) {
            ModSet a = ModSet::from_mask(n, mask);
            for (int64_t alpha = 1; alpha < n; ++alpha) {
                bool fixed = a.rotated(alpha) == a;
                auto st = stabilizer_decompose(a, alpha);
                CHECK(fixed == st.has_value());
                if (st) {
                    CHECK(st->d == std::gcd(n, alpha));
                    CHECK(a.size() % (n / st->d) == 0);
                }
            }
        }
    }
}

TEST_CASE("mixed-unit frozen instance and preconditions") {
    // k = 6, A = {0, 1}, q = 2, B = {0, 2, 5}: |A + B| = 5 >= min(6, 4).
    BoundReport r = mixed_unit_check(ModSet::of(6, {0, 1}), 2, ModSet::of(6, {0, 2, 5}));
    CHECK(r.bound_name == "l8");
    CHECK(r.actual == 5);
    CHECK(r.bound == 4);
    CHECK(r.satisfied);

    // Prime modulus is out of scope.
    expect_error(errc::precondition,
                 [] { mixed_unit_check(ModSet::of(5, {0}), 2, ModSet::of(5, {0})); });
    // q must not be a unit.
    expect_error(errc::precondition,
                 [] { mixed_unit_check(ModSet::of(6, {0}), 5, ModSet::of(6, {0, 5})); });
    // B outside {0, q} + units.
    expect_error(errc::precondition,
                 [] { mixed_unit_check(ModSet::of(6, {0}), 2, ModSet::of(6, {0, 3})); });
    // Pair-growth hypothesis |A + {0, q}| >= |A| + 1 can fail: A fixed by +2.
    expect_error(errc::precondition,
                 [] { mixed_unit_check(ModSet::of(6, {0, 2, 4}), 2, ModSet::of(6, {0, 2})); });
}

TEST_CASE("modular sweeps are clean and count vacuous instances") {
    SweepResult ch = chowla_sweep(6);
    CHECK(ch.lemma == "chowla");
    CHECK(ch.violations.empty());
    CHECK(ch.instances_checked > 0);

    SweepResult st = stabilizer_sweep(6);
    CHECK(st.lemma == "l6");
    CHECK(st.violations.empty());
    CHECK(st.instances_checked > 0);

    std::vector<int64_t> moduli{6};
    SweepResult mu = mixed_unit_sweep(moduli);
    CHECK(mu.lemma == "l8");
    CHECK(mu.violations.empty());
    CHECK(mu.instances_checked > 0);
    CHECK(mu.vacuous > 0); // growth-hypothesis failures are counted, not asserted

    expect_error(errc::invalid_argument, [] { chowla_sweep(1); });
    expect_error(errc::invalid_argument, [] { chowla_sweep(25); });
}
