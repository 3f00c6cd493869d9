#include "search.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <unordered_set>

#include "modset.hpp"
#include "residue.hpp"
#include "util.hpp"

namespace dilatekit {

namespace {

constexpr size_t kEchoCap = 1000;   // largest set echoed into violation records
constexpr size_t kExampleCap = 32;  // stored examples per tally; counts are exact
constexpr uint64_t kNaiveConfirmBudget = 100'000'000;

BigInt binomial(uint64_t n, uint64_t r) {
    if (r > n) return 0;
    r = std::min(r, n - r);
    BigInt v = 1;
    for (uint64_t i = 1; i <= r; ++i) {
        v *= n - r + i;
        v /= i;
    }
    return v;
}

std::vector<int64_t> echo_or_empty(const IntSet& a) {
    if (a.size() > kEchoCap) return {};
    return std::vector<int64_t>(a.elements().begin(), a.elements().end());
}

// Enumerates the instance space of a search spec in a fixed deterministic
// order, invoking fn on each set. Returns the instance count.
uint64_t for_each_instance(const SearchSpec& spec, const std::function<void(const IntSet&)>& fn) {
    uint64_t count = 0;
    switch (spec.mode) {
        case SearchMode::exhaustive: {
            if (spec.universe < 1) fail(errc::invalid_argument, "universe must be positive");
            if (spec.set_size == 0) {
                // All nonempty subsets of [0, universe).
                if (spec.universe > 62)
                    fail(errc::budget_exceeded, "subset enumeration needs universe <= 62");
                BigInt total = (BigInt(1) << spec.universe) - 1;
                if (total > spec.budget)
                    fail(errc::budget_exceeded,
                         "2^" + std::to_string(spec.universe) + " - 1 = " + total.str() +
                             " subsets exceed the budget of " + std::to_string(spec.budget));
                uint64_t full = (uint64_t{1} << spec.universe) - 1;
                std::vector<int64_t> buf;
                for (uint64_t mask = 1; mask <= full; ++mask) {
                    buf.clear();
                    uint64_t m = mask;
                    while (m) {
                        buf.push_back(__builtin_ctzll(m));
                        m &= m - 1;
                    }
                    fn(IntSet::from_sorted_unique(buf));
                    ++count;
                }
                break;
            }
            if (static_cast<int64_t>(spec.set_size) > spec.universe)
                fail(errc::invalid_argument, "set size exceeds the universe");
            BigInt total = binomial(static_cast<uint64_t>(spec.universe), spec.set_size);
            if (total > spec.budget)
                fail(errc::budget_exceeded, "binomial(" + std::to_string(spec.universe) + ", " +
                                                std::to_string(spec.set_size) + ") = " +
                                                total.str() + " exceeds the budget of " +
                                                std::to_string(spec.budget));
            std::vector<int64_t> idx(spec.set_size);
            for (size_t i = 0; i < spec.set_size; ++i) idx[i] = static_cast<int64_t>(i);
            size_t r = spec.set_size;
            for (;;) {
                fn(IntSet::from_sorted_unique(idx));
                ++count;
                // Advance to the next lexicographic combination.
                size_t i = r;
                while (i > 0 && idx[i - 1] == spec.universe - static_cast<int64_t>(r - i) - 1) --i;
                if (i == 0) break;
                ++idx[i - 1];
                for (size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
            }
            break;
        }
        case SearchMode::random: {
            if (spec.set_size == 0) fail(errc::invalid_argument, "random mode needs a set size");
            if (spec.samples == 0) fail(errc::invalid_argument, "random mode needs samples");
            size_t hi = std::max(spec.size_max, spec.set_size);
            for (size_t size = spec.set_size; size <= hi; ++size)
                for (uint64_t s = 0; s < spec.samples; ++s) {
                    fn(sample_subset(spec.seed, size, s, spec.universe));
                    ++count;
                }
            break;
        }
        case SearchMode::structured: {
            if (spec.set_size == 0) fail(errc::invalid_argument, "structured mode needs a size");
            size_t hi = std::max(spec.size_max, spec.set_size);
            for (size_t n = spec.set_size; n <= hi; ++n) {
                fn(family_member(spec.family, spec.k, n));
                ++count;
            }
            break;
        }
    }
    return count;
}

} // namespace

IntSet sample_subset(uint64_t seed, size_t size, uint64_t index, int64_t universe) {
    if (universe < 1 || static_cast<int64_t>(size) > universe)
        fail(errc::invalid_argument, "sample size exceeds the universe");
    SplitMix64 rng(seed ^ (size * 0x9e3779b97f4a7c15ull) ^ (index * 0xbf58476d1ce4e5b9ull));
    // Floyd's algorithm: uniform without building the full universe.
    std::unordered_set<int64_t> chosen;
    chosen.reserve(size * 2);
    for (int64_t j = universe - static_cast<int64_t>(size); j < universe; ++j) {
        int64_t t = static_cast<int64_t>(rng.below(static_cast<uint64_t>(j) + 1));
        if (!chosen.insert(t).second) chosen.insert(j);
    }
    std::vector<int64_t> v(chosen.begin(), chosen.end());
    std::sort(v.begin(), v.end());
    return IntSet::from_sorted_unique(std::move(v));
}

IntSet family_member(SetFamily family, int64_t k, uint64_t n) {
    if (n == 0) fail(errc::invalid_argument, "family member needs size >= 1");
    switch (family) {
        case SetFamily::ap:
            return IntSet::interval(0, static_cast<int64_t>(n) - 1);
        case SetFamily::two_ap: {
            // Two difference-k progressions on residues 0 and 1.
            uint64_t h1 = (n + 1) / 2, h2 = n / 2;
            std::vector<int64_t> v;
            v.reserve(n);
            for (uint64_t i = 0; i < h1; ++i) v.push_back(checked_mul(k, static_cast<int64_t>(i)));
            for (uint64_t i = 0; i < h2; ++i)
                v.push_back(checked_add(1, checked_mul(k, static_cast<int64_t>(i))));
            return IntSet::from_values(v);
        }
        case SetFamily::geometric: {
            // {0, 1, 2, 4, ..., 2^(n-2)}: sparse with doubling gaps.
            std::vector<int64_t> v{0};
            int64_t p = 1;
            for (uint64_t i = 1; i < n; ++i) {
                v.push_back(p);
                if (i + 1 < n) p = checked_mul(p, 2);
            }
            return IntSet::from_values(v);
        }
    }
    fail(errc::internal, "unknown family");
}

SearchResult extremal_min(const SearchSpec& spec) {
    if (spec.mode != SearchMode::structured && spec.set_size == 0)
        fail(errc::invalid_argument, "extremal search needs an exact set size");
    LinearForm form{spec.m, spec.k};

    SearchResult res;
    res.spec = spec;
    res.minimum = ~uint64_t{0};
    std::set<std::vector<int64_t>> canon; // bounded: lexicographically smallest witnesses

    bool dedupe = false;
    std::unordered_set<std::string> seen;
    if (spec.mode == SearchMode::exhaustive && spec.set_size > 0 &&
        static_cast<int64_t>(spec.set_size) <= spec.universe &&
        binomial(static_cast<uint64_t>(spec.universe), spec.set_size) <= 2'000'000)
        dedupe = true;

    auto consider = [&](const IntSet& a) {
        Normalized norm = normalize_set(a);
        std::vector<int64_t> key(norm.set.elements().begin(), norm.set.elements().end());
        if (dedupe) {
            std::string packed(reinterpret_cast<const char*>(key.data()),
                               key.size() * sizeof(int64_t));
            if (!seen.insert(packed).second) return;
        }
        uint64_t sz = evaluate_form_size(form, norm.set, spec.path);
        if (sz < res.minimum) {
            res.minimum = sz;
            canon.clear();
        }
        if (sz == res.minimum) {
            if (canon.size() < spec.witness_cap) {
                canon.insert(std::move(key));
            } else if (!canon.empty() && key < *canon.rbegin()) {
                canon.insert(std::move(key));
                canon.erase(std::prev(canon.end()));
            }
        }
    };

    res.instances_examined = for_each_instance(spec, consider);
    for (const auto& v : canon) res.witnesses.push_back(IntSet::from_sorted_unique(v));
    if (!res.witnesses.empty() && spec.m == 2 && spec.k >= 3 && spec.k % 2 == 1)
        res.bound_comparison = theorem_check(res.witnesses.front(), spec.k, spec.path);
    return res;
}

namespace {

using BoundFn = std::function<BoundReport(const IntSet&, const SearchSpec&, SumPath)>;

const std::map<std::string, BoundFn>& bound_table() {
    static const std::map<std::string, BoundFn> table = {
        {"thm",
         [](const IntSet& a, const SearchSpec& s, SumPath p) { return theorem_check(a, s.k, p); }},
        {"coarse",
         [](const IntSet& a, const SearchSpec& s, SumPath p) {
             return coarse_bound_check(a, s.k, p);
         }},
        {"pair",
         [](const IntSet& a, const SearchSpec& s, SumPath p) {
             return coprime_pair_check(s.m, s.k, a, a, p);
         }},
        {"min_growth",
         [](const IntSet& a, const SearchSpec& s, SumPath p) {
             return min_growth_check(s.m, s.k, a, p);
         }},
        {"full_residue",
         [](const IntSet& a, const SearchSpec& s, SumPath p) {
             return full_residue_check(s.k, a, p);
         }},
        {"delta_sum", [](const IntSet& a, const SearchSpec& s, SumPath) {
             return delta_sum_check(a, s.k);
         }},
    };
    return table;
}

const std::vector<std::string>& lemma_names() {
    static const std::vector<std::string> names = {"class_parity", "delta_floor_pp",
                                                   "delta_floor_sp"};
    return names;
}

bool lemma_hypotheses_met(const LemmaOutcome& out) {
    for (const auto& h : out.hypotheses)
        if (!h.met) return false;
    return true;
}

// Recompute the gain set for one class on the definitional path.
uint64_t naive_delta_size(const IntSet& a, int64_t k, size_t class_index) {
    ResidueDecomposition d = decompose(a, k);
    const CongruenceClass& c = d.class_at(class_index);
    IntSet doubled = dilate(c.elements, 2);
    IntSet whole = minkowski_sum(doubled, dilate(a, k), SumPath::naive);
    IntSet own = minkowski_sum(doubled, dilate(c.elements, k), SumPath::naive);
    return difference(whole, own).size();
}

AnalysisContext with_ordering(const AnalysisContext& ctx, int64_t p, int64_t q) {
    AnalysisContext out = ctx;
    out.base_p = p;
    out.other_q = q;
    out.first_nondiv.reset();
    for (size_t i = 1; i <= out.decomp.class_count(); ++i) {
        if (out.decomp.class_at(i).residue % p != 0) {
            out.first_nondiv = i;
            break;
        }
    }
    return out;
}

BoundReport lemma_as_report(const LemmaOutcome& out, int64_t k, uint64_t size) {
    BoundReport rep;
    rep.bound_name = out.lemma;
    rep.k = k;
    rep.size = size;
    rep.actual = out.observed;
    rep.bound = out.threshold;
    rep.hypotheses = out.hypotheses;
    rep.margin = BigInt(out.observed) - out.threshold;
    rep.satisfied = out.conclusion_holds;
    return rep;
}

HuntResult hunt_lemma(const SearchSpec& spec, const std::string& name) {
    HuntResult res;
    res.bound_name = name;
    res.spec = spec;
    uint64_t predicate_instances = 0;

    auto handle_outcome = [&](const IntSet& a, const LemmaOutcome& out,
                              const std::string& ordering) {
        ++predicate_instances;
        bool hyps = lemma_hypotheses_met(out) && out.applicable;
        if (!hyps) return;
        ++res.hypotheses_met;
        if (out.lemma != "class_parity") {
            BigInt margin = BigInt(out.observed) - out.threshold;
            if (!res.min_margin || margin < *res.min_margin) res.min_margin = margin;
        }
        if (out.violation) {
            HuntViolation v;
            v.report = lemma_as_report(out, spec.k, a.size());
            v.set = echo_or_empty(a);
            v.set_size = a.size();
            v.class_index = out.class_index;
            v.ordering = ordering;
            v.detail = out.detail;
            if (out.lemma != "class_parity") {
                uint64_t pairs = static_cast<uint64_t>(a.size()) * a.size();
                if (pairs <= kNaiveConfirmBudget)
                    v.confirmed_naive =
                        BigInt(naive_delta_size(a, spec.k, out.class_index)) < out.threshold;
            } else {
                v.confirmed_naive = true; // parity conclusion does not involve the kernel
            }
            res.violations.push_back(std::move(v));
        }
    };

    Factorization f = classify_modulus(spec.k);
    for_each_instance(spec, [&](const IntSet& a) {
        AnalysisContext ctx = make_context(a, spec.k);
        if (name == "class_parity") {
            for (size_t i = 1; i <= ctx.decomp.class_count(); ++i)
                handle_outcome(a, class_parity_check(ctx, i), "");
        } else if (name == "delta_floor_pp") {
            if (f.kind == Factorization::Kind::prime_power && ctx.first_nondiv) {
                for (size_t i : ctx.decomp.partial_indices())
                    if (i != *ctx.first_nondiv)
                        handle_outcome(a, delta_floor_primepower_check(ctx, i), "");
            }
        } else { // delta_floor_sp
            if (f.kind == Factorization::Kind::semiprime && ctx.decomp.class_count() >= 2) {
                AnalysisContext swapped = with_ordering(ctx, f.q, f.p);
                std::string o1 = std::to_string(f.p) + "," + std::to_string(f.q);
                std::string o2 = std::to_string(f.q) + "," + std::to_string(f.p);
                for (size_t i : ctx.decomp.partial_indices()) {
                    handle_outcome(a, delta_floor_semiprime_check(ctx, i), o1);
                    handle_outcome(a, delta_floor_semiprime_check(swapped, i), o2);
                }
            }
        }
    });
    res.instances = predicate_instances;
    return res;
}

} // namespace

std::vector<std::string> bound_registry_names() {
    std::vector<std::string> names;
    for (const auto& [name, fn] : bound_table()) names.push_back(name);
    for (const auto& name : lemma_names()) names.push_back(name);
    return names;
}

HuntResult hunt_counterexamples(const SearchSpec& spec, const std::string& bound_name) {
    if (std::find(lemma_names().begin(), lemma_names().end(), bound_name) != lemma_names().end())
        return hunt_lemma(spec, bound_name);
    auto it = bound_table().find(bound_name);
    if (it == bound_table().end()) {
        std::string names;
        for (const auto& n : bound_registry_names()) names += (names.empty() ? "" : ", ") + n;
        fail(errc::unknown_bound, "unknown bound '" + bound_name + "'; registry: " + names);
    }
    const BoundFn& eval = it->second;

    HuntResult res;
    res.bound_name = bound_name;
    res.spec = spec;
    res.instances = for_each_instance(spec, [&](const IntSet& a) {
        BoundReport rep = eval(a, spec, spec.path);
        if (!all_hypotheses_met(rep)) return;
        ++res.hypotheses_met;
        if (!res.min_margin || rep.margin < *res.min_margin) res.min_margin = rep.margin;
        if (!rep.satisfied) {
            HuntViolation v;
            v.set = echo_or_empty(a);
            v.set_size = a.size();
            uint64_t pairs = static_cast<uint64_t>(a.size()) * a.size();
            if (pairs <= kNaiveConfirmBudget) {
                BoundReport naive_rep = eval(a, spec, SumPath::naive);
                v.confirmed_naive = !naive_rep.satisfied;
                v.detail = naive_rep.satisfied ? "definitional path disagrees with the fast path"
                                               : "";
            }
            v.report = std::move(rep);
            res.violations.push_back(std::move(v));
        }
    });
    return res;
}

std::vector<MarginRow> margin_profile(int64_t k, uint64_t n_from, uint64_t n_to, SetFamily family,
                                      SumPath path) {
    if (n_from == 0 || n_to < n_from) fail(errc::invalid_argument, "bad size range");
    std::vector<MarginRow> rows;
    rows.reserve(n_to - n_from + 1);
    for (uint64_t n = n_from; n <= n_to; ++n) {
        IntSet a = family_member(family, k, n);
        MarginRow row;
        row.n = n;
        row.size = a.size();
        row.actual = evaluate_form_size(LinearForm{2, k}, a, path);
        row.bound = theorem_bound(k, a.size());
        row.margin = BigInt(row.actual) - row.bound;
        rows.push_back(std::move(row));
    }
    return rows;
}

RegimeSweepResult regime_sweep(int64_t k, int64_t exhaustive_universe,
                               std::vector<size_t> sample_sizes, uint64_t samples_per_size,
                               int64_t sample_universe, uint64_t seed) {
    if (exhaustive_universe < 1 || exhaustive_universe > 24)
        fail(errc::invalid_argument, "exhaustive universe must lie in [1, 24]");
    if (k < 3 || k % 2 == 0) fail(errc::invalid_argument, "regime sweep needs odd k >= 3");
    RegimeSweepResult res;
    res.k = k;
    res.exhaustive_universe = exhaustive_universe;
    res.sample_sizes = sample_sizes;
    res.samples_per_size = samples_per_size;
    res.sample_universe = sample_universe;
    res.seed = seed;
    res.thm.bound_name = "thm";
    res.coarse.bound_name = "coarse";
    res.parity.lemma = "class_parity";
    res.floor_pp.lemma = "delta_floor_pp";
    res.floor_sp.lemma = "delta_floor_sp";

    Factorization f = classify_modulus(k);

    auto record_bound = [&](BoundTally& tally, const IntSet& a, const BoundReport& rep,
                            SumPath confirm_path) {
        ++tally.evaluated;
        bool hyps = all_hypotheses_met(rep);
        if (hyps) ++tally.hypotheses_met;
        if (rep.satisfied) return;
        ++tally.inequality_failures;
        bool confirmed = false;
        uint64_t pairs = static_cast<uint64_t>(a.size()) * a.size();
        if (pairs <= kNaiveConfirmBudget) {
            BoundReport again = tally.bound_name == "thm"
                                    ? theorem_check(a, k, confirm_path)
                                    : coarse_bound_check(a, k, confirm_path);
            confirmed = !again.satisfied;
        }
        if (hyps) ++tally.violations;
        if (tally.examples.size() < kExampleCap) {
            RegimeViolation v;
            v.check = tally.bound_name;
            v.set = echo_or_empty(a);
            v.set_size = a.size();
            v.detail = hyps ? "hypothesis-met bound failure" : "bound failure outside hypotheses";
            v.confirmed_naive = confirmed;
            tally.examples.push_back(std::move(v));
        }
    };

    auto record_lemma = [&](LemmaTally& tally, const IntSet& a, const LemmaOutcome& out,
                            const std::string& ordering) {
        ++tally.evaluated;
        bool hyps = lemma_hypotheses_met(out) && out.applicable;
        if (!hyps) return;
        ++tally.applicable;
        if (!out.violation) return;
        ++tally.violations;
        if (tally.examples.size() < kExampleCap) {
            RegimeViolation v;
            v.check = out.lemma;
            v.set = echo_or_empty(a);
            v.set_size = a.size();
            v.class_index = out.class_index;
            v.ordering = ordering;
            v.detail = out.detail;
            if (out.lemma == "class_parity") {
                v.confirmed_naive = true;
            } else {
                uint64_t pairs = static_cast<uint64_t>(a.size()) * a.size();
                if (pairs <= kNaiveConfirmBudget)
                    v.confirmed_naive =
                        BigInt(naive_delta_size(a, k, out.class_index)) < out.threshold;
            }
            tally.examples.push_back(std::move(v));
        }
    };

    bool coarse_in_scope = f.kind != Factorization::Kind::other;
    auto check_instance = [&](const IntSet& a) {
        ++res.instances;
        record_bound(res.thm, a, theorem_check(a, k), SumPath::naive);
        if (coarse_in_scope) record_bound(res.coarse, a, coarse_bound_check(a, k), SumPath::naive);
        AnalysisContext ctx = make_context(a, k);
        for (size_t i = 1; i <= ctx.decomp.class_count(); ++i)
            record_lemma(res.parity, a, class_parity_check(ctx, i), "");
        if (f.kind == Factorization::Kind::prime_power && ctx.first_nondiv) {
            for (size_t i : ctx.decomp.partial_indices())
                if (i != *ctx.first_nondiv)
                    record_lemma(res.floor_pp, a, delta_floor_primepower_check(ctx, i), "");
        }
        if (f.kind == Factorization::Kind::semiprime && ctx.decomp.class_count() >= 2) {
            AnalysisContext swapped = with_ordering(ctx, f.q, f.p);
            std::string o1 = std::to_string(f.p) + "," + std::to_string(f.q);
            std::string o2 = std::to_string(f.q) + "," + std::to_string(f.p);
            for (size_t i : ctx.decomp.partial_indices()) {
                record_lemma(res.floor_sp, a, delta_floor_semiprime_check(ctx, i), o1);
                record_lemma(res.floor_sp, a, delta_floor_semiprime_check(swapped, i), o2);
            }
        }
    };

    uint64_t full = (uint64_t{1} << exhaustive_universe) - 1;
    std::vector<int64_t> buf;
    for (uint64_t mask = 1; mask <= full; ++mask) {
        buf.clear();
        uint64_t m = mask;
        while (m) {
            buf.push_back(__builtin_ctzll(m));
            m &= m - 1;
        }
        check_instance(IntSet::from_sorted_unique(buf));
    }
    for (size_t size : sample_sizes)
        for (uint64_t s = 0; s < samples_per_size; ++s)
            check_instance(sample_subset(seed, size, s, sample_universe));
    return res;
}

} // namespace dilatekit
