#include "bounds.hpp"

#include <algorithm>
#include <numeric>

#include "modset.hpp"
#include "util.hpp"

namespace dilatekit {

Factorization classify_modulus(int64_t k) {
    if (k < 2) fail(errc::invalid_argument, "modulus must be at least 2");
    Factorization f;
    int64_t rest = k;
    int64_t p = 0;
    for (int64_t d = 2; d * d <= rest; ++d) {
        if (rest % d == 0) {
            p = d;
            break;
        }
    }
    if (p == 0) { // k prime
        f.kind = Factorization::Kind::prime_power;
        f.p = k;
        f.alpha = 1;
        return f;
    }
    int alpha = 0;
    while (rest % p == 0) {
        rest /= p;
        ++alpha;
    }
    if (rest == 1) {
        f.kind = Factorization::Kind::prime_power;
        f.p = p;
        f.alpha = alpha;
        return f;
    }
    if (alpha == 1) {
        bool rest_prime = true;
        for (int64_t d = 2; d * d <= rest; ++d)
            if (rest % d == 0) {
                rest_prime = false;
                break;
            }
        if (rest_prime) {
            f.kind = Factorization::Kind::semiprime;
            f.p = p;
            f.q = rest;
            return f;
        }
    }
    f.kind = Factorization::Kind::other;
    f.p = p;
    return f;
}

BigInt power_of(int64_t base, int64_t exp) {
    if (exp < 0) fail(errc::invalid_argument, "negative exponent");
    BigInt r = 1;
    for (int64_t i = 0; i < exp; ++i) r *= base;
    return r;
}

namespace {

uint64_t set_gcd(const IntSet& a) {
    uint64_t g = 0;
    for (int64_t v : a.elements()) {
        uint64_t m = v < 0 ? static_cast<uint64_t>(-(v + 1)) + 1 : static_cast<uint64_t>(v);
        g = std::gcd(g, m);
        if (g == 1) break;
    }
    return g;
}

void require_odd_k(int64_t k) {
    if (k < 3) fail(errc::invalid_argument, "k must be at least 3");
    if (k % 2 == 0) fail(errc::invalid_argument, "k must be odd");
}

} // namespace

BoundReport coprime_pair_check(int64_t n, int64_t m, const IntSet& a, const IntSet& b,
                               SumPath path) {
    if (n < 1 || m < 1) fail(errc::invalid_argument, "dilation factors must be positive");
    if (std::gcd(n, m) != 1)
        fail(errc::invalid_argument, "dilation factors " + std::to_string(n) + " and " +
                                         std::to_string(m) + " are not coprime");
    if (a.empty() || b.empty()) fail(errc::empty_set, "both sets must be nonempty");
    BigInt cn_b = residue_count(b, n);
    BigInt cm_a = residue_count(a, m);
    BoundReport rep;
    rep.bound_name = "pair";
    rep.k = m;
    rep.size = a.size();
    rep.actual = minkowski_sum_size(dilate(a, n), dilate(b, m), path);
    rep.bound = cn_b * a.size() + cm_a * b.size() - cm_a * cn_b;
    return finish_report(std::move(rep));
}

BoundReport min_growth_check(int64_t n, int64_t m, const IntSet& a, SumPath path) {
    if (n < 2 || m <= n) fail(errc::invalid_argument, "need 2 <= n < m");
    if (std::gcd(n, m) != 1)
        fail(errc::invalid_argument, "dilation factors " + std::to_string(n) + " and " +
                                         std::to_string(m) + " are not coprime");
    if (a.empty()) fail(errc::empty_set, "set must be nonempty");
    BoundReport rep;
    rep.bound_name = "min_growth";
    rep.k = m;
    rep.size = a.size();
    rep.actual = minkowski_sum_size(dilate(a, n), dilate(a, m), path);
    rep.bound = BigInt(4) * a.size() - 4;
    return finish_report(std::move(rep));
}

BoundReport full_residue_check(int64_t k, const IntSet& a, SumPath path) {
    require_odd_k(k);
    if (a.empty()) fail(errc::empty_set, "set must be nonempty");
    BoundReport rep;
    rep.bound_name = "full_residue";
    rep.k = k;
    rep.size = a.size();
    rep.actual = evaluate_form_size(LinearForm{2, k}, a, path);
    rep.bound = BigInt(k + 2) * a.size() - 2 * k;
    rep.hypotheses.push_back(
        {"all_residues_hit", residue_count(a, k) == static_cast<uint64_t>(k)});
    return finish_report(std::move(rep));
}

BoundReport coarse_bound_check(const IntSet& a, int64_t k, SumPath path) {
    require_odd_k(k);
    Factorization f = classify_modulus(k);
    if (f.kind == Factorization::Kind::other)
        fail(errc::invalid_argument,
             "k = " + std::to_string(k) + " is neither a prime power nor a semiprime");
    if (a.empty()) fail(errc::empty_set, "set must be nonempty");
    BoundReport rep;
    rep.bound_name = "coarse";
    rep.k = k;
    rep.size = a.size();
    rep.actual = evaluate_form_size(LinearForm{2, k}, a, path);
    rep.bound = BigInt(k + 2) * a.size() - 4 * power_of(k, k - 1);
    rep.hypotheses.push_back({"k_in_scope", true});
    return finish_report(std::move(rep));
}

BigInt theorem_bound(int64_t k, uint64_t size) {
    return BigInt(k + 2) * size - BigInt(k) * k - k + 2;
}

BoundReport theorem_check(const IntSet& a, int64_t k, SumPath path) {
    require_odd_k(k);
    if (a.empty()) fail(errc::empty_set, "set must be nonempty");
    Factorization f = classify_modulus(k);
    bool in_scope = f.kind == Factorization::Kind::prime_power ||
                    f.kind == Factorization::Kind::semiprime;
    ResidueDecomposition d = decompose(a, k);
    uint64_t largest = d.class_at(1).elements.size();
    BoundReport rep;
    rep.bound_name = "thm";
    rep.k = k;
    rep.size = a.size();
    rep.actual = evaluate_form_size(LinearForm{2, k}, a, path);
    rep.bound = theorem_bound(k, a.size());
    rep.hypotheses.push_back({"k_in_scope", in_scope});
    rep.hypotheses.push_back({"size_threshold", BigInt(a.size()) > 8 * power_of(k, k)});
    rep.hypotheses.push_back({"largest_class_threshold", BigInt(largest) > 8 * power_of(k, k - 1)});
    return finish_report(std::move(rep));
}

BoundReport delta_sum_check(const IntSet& a, int64_t k) {
    if (k < 2) fail(errc::invalid_argument, "modulus must be at least 2");
    if (a.empty()) fail(errc::empty_set, "set must be nonempty");
    ResidueDecomposition d = decompose(a, k);
    uint64_t total = 0;
    for (size_t i = 1; i <= d.class_count(); ++i) total += delta_set(d, i, a).elements.size();
    uint64_t j = d.class_count();
    BoundReport rep;
    rep.bound_name = "delta_sum";
    rep.k = k;
    rep.size = a.size();
    rep.actual = total;
    rep.bound = BigInt(j) * (j - 1);
    return finish_report(std::move(rep));
}

AnalysisContext make_context(const IntSet& a, int64_t k) {
    Factorization f = classify_modulus(k);
    return make_context_ordered(a, k, f.p, f.q);
}

AnalysisContext make_context_ordered(const IntSet& a, int64_t k, int64_t base_p, int64_t other_q) {
    AnalysisContext ctx;
    ctx.k = k;
    ctx.fact = classify_modulus(k);
    if (ctx.fact.kind == Factorization::Kind::semiprime) {
        if (!((base_p == ctx.fact.p && other_q == ctx.fact.q) ||
              (base_p == ctx.fact.q && other_q == ctx.fact.p)))
            fail(errc::invalid_argument, "prime ordering does not match the factorization of " +
                                             std::to_string(k));
    }
    ctx.base_p = base_p;
    ctx.other_q = other_q;
    ctx.decomp = decompose(a, k);
    ctx.deltas.reserve(ctx.decomp.class_count());
    for (size_t i = 1; i <= ctx.decomp.class_count(); ++i)
        ctx.deltas.push_back(delta_set(ctx.decomp, i, a).elements);
    ctx.gcd_one = set_gcd(a) == 1;
    ctx.contains_zero = a.contains(0);
    ctx.top_residue_zero = ctx.decomp.class_at(1).residue == 0;
    for (size_t i = 1; i <= ctx.decomp.class_count(); ++i) {
        if (ctx.decomp.class_at(i).residue == 0) {
            ctx.zero_class = i;
            break;
        }
    }
    if (ctx.base_p > 1) {
        for (size_t i = 1; i <= ctx.decomp.class_count(); ++i) {
            if (ctx.decomp.class_at(i).residue % ctx.base_p != 0) {
                ctx.first_nondiv = i;
                break;
            }
        }
    }
    for (size_t i : ctx.decomp.partial_indices()) {
        if (ctx.deltas[i - 1].size() < ctx.decomp.class_at(i).elements.size()) {
            ctx.first_deficit = i;
            break;
        }
    }
    return ctx;
}

LemmaOutcome class_parity_check(const AnalysisContext& ctx, size_t class_index) {
    const CongruenceClass& c = ctx.decomp.class_at(class_index);
    LemmaOutcome out;
    out.lemma = "class_parity";
    out.class_index = class_index;
    bool scope = ctx.k % 2 == 1 && (ctx.fact.kind == Factorization::Kind::prime_power ||
                                    ctx.fact.kind == Factorization::Kind::semiprime);
    out.hypotheses.push_back({"k_odd_prime_power_or_semiprime", scope});
    out.hypotheses.push_back({"gcd_one", ctx.gcd_one});
    out.hypotheses.push_back({"zero_in_set", ctx.contains_zero});
    out.observed = ctx.deltas[class_index - 1].size();
    out.threshold = c.elements.size();
    out.applicable = out.observed < c.elements.size();
    uint64_t parities = residue_count(c.quotient, 2);
    out.conclusion_holds = !out.applicable || parities == 2;
    bool hyps = scope && ctx.gcd_one && ctx.contains_zero;
    out.violation = hyps && out.applicable && !out.conclusion_holds;
    out.detail = "gain " + std::to_string(out.observed) + " vs class size " +
                 std::to_string(c.elements.size()) + "; quotient parities " +
                 std::to_string(parities);
    return out;
}

LemmaOutcome delta_floor_primepower_check(const AnalysisContext& ctx, size_t class_index) {
    if (ctx.fact.kind != Factorization::Kind::prime_power)
        fail(errc::precondition,
             "modulus " + std::to_string(ctx.k) + " is not a prime power");
    const CongruenceClass& c = ctx.decomp.class_at(class_index);
    if (!ctx.first_nondiv)
        fail(errc::precondition, "every class residue is divisible by " +
                                     std::to_string(ctx.base_p) +
                                     "; no reference class exists");
    size_t m = *ctx.first_nondiv;
    if (class_index == m)
        fail(errc::precondition,
             "class " + std::to_string(class_index) + " is the first coprime class itself");
    if (!ctx.decomp.is_partial(class_index))
        fail(errc::precondition, "class " + std::to_string(class_index) + " is not partial");

    LemmaOutcome out;
    out.lemma = "delta_floor_pp";
    out.class_index = class_index;
    out.hypotheses.push_back({"gcd_one", ctx.gcd_one});
    out.hypotheses.push_back({"k_odd", ctx.k % 2 == 1});
    out.observed = ctx.deltas[class_index - 1].size();
    bool divisible = c.residue % ctx.base_p == 0;
    if (divisible) {
        out.applicable = true;
        out.threshold = ctx.decomp.class_at(m).elements.size();
        out.detail = "divisible residue: floor is the first coprime class size";
    } else if (ctx.zero_class) {
        out.applicable = true;
        out.threshold = ctx.decomp.class_at(*ctx.zero_class).elements.size();
        out.detail = "coprime residue: floor is the zero-residue class size";
    } else {
        out.applicable = false;
        out.detail = "coprime residue but no zero-residue class";
    }
    out.conclusion_holds = !out.applicable || BigInt(out.observed) >= out.threshold;
    bool hyps = ctx.gcd_one && ctx.k % 2 == 1;
    out.violation = hyps && out.applicable && !out.conclusion_holds;
    return out;
}

LemmaOutcome delta_floor_semiprime_check(const AnalysisContext& ctx, size_t class_index) {
    if (ctx.fact.kind != Factorization::Kind::semiprime)
        fail(errc::precondition,
             "modulus " + std::to_string(ctx.k) + " is not a semiprime");
    ctx.decomp.class_at(class_index);
    if (ctx.decomp.class_count() < 2)
        fail(errc::precondition, "needs at least two congruence classes");
    if (!ctx.decomp.is_partial(class_index))
        fail(errc::precondition, "class " + std::to_string(class_index) + " is not partial");

    LemmaOutcome out;
    out.lemma = "delta_floor_sp";
    out.class_index = class_index;
    out.hypotheses.push_back({"gcd_one", ctx.gcd_one});
    out.hypotheses.push_back({"k_odd", ctx.k % 2 == 1});
    out.hypotheses.push_back({"top_residue_zero", ctx.top_residue_zero});
    out.observed = ctx.deltas[class_index - 1].size();

    uint64_t size1 = ctx.decomp.class_at(1).elements.size();
    uint64_t size2 = ctx.decomp.class_at(2).elements.size();
    int64_t u2 = ctx.decomp.class_at(2).residue;
    int64_t g2 = std::gcd(u2, ctx.k);

    if (g2 == 1) {
        out.applicable = true;
        if (class_index == 2) {
            out.threshold = size1;
            out.detail = "unit second residue: floor is the largest class size";
        } else {
            out.threshold = size2;
            out.detail = "unit second residue: floor is the second class size";
        }
    } else if (g2 == ctx.base_p) {
        if (!ctx.first_nondiv) {
            out.applicable = false;
            out.detail = "no class residue coprime to the base prime";
        } else {
            size_t m = *ctx.first_nondiv;
            BigInt q_gain = BigInt(ctx.other_q) * ctx.decomp.class_at(m).elements.size();
            out.applicable = true;
            if (class_index == m) {
                out.threshold = size2;
                out.detail = "first coprime class: floor is the second class size";
            } else if (class_index == 1) {
                out.threshold = std::min(BigInt(size2), q_gain);
                out.detail = "largest class: floor is min(second class, q * coprime class)";
            } else if (class_index < m) {
                out.threshold = std::min(BigInt(size1), q_gain);
                out.detail = "early class: floor is min(largest class, q * coprime class)";
            } else {
                out.threshold = std::min(std::min(BigInt(size1), BigInt(size2)), q_gain);
                out.detail = "late class: floor is min(largest, second, q * coprime class)";
            }
        }
    } else {
        out.applicable = false;
        out.detail = "gcd(u_2, k) = " + std::to_string(g2) + " outside {1, base prime}";
    }
    out.conclusion_holds = !out.applicable || BigInt(out.observed) >= out.threshold;
    bool hyps = ctx.gcd_one && ctx.k % 2 == 1 && ctx.top_residue_zero;
    out.violation = hyps && out.applicable && !out.conclusion_holds;
    return out;
}

} // namespace dilatekit
