#include "dilatekit.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "bounds.hpp"
#include "error.hpp"
#include "intset.hpp"
#include "json_out.hpp"
#include "modset.hpp"
#include "residue.hpp"
#include "search.hpp"
#include "util.hpp"

using namespace dilatekit;
using jsonio::json;

struct dk_intset {
    IntSet v;
};

namespace {

thread_local std::string g_last_error;

template <class F>
dk_status wrap(F&& f) noexcept {
    try {
        f();
        g_last_error.clear();
        return DK_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return static_cast<dk_status>(static_cast<int>(e.code()));
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return DK_EINTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return DK_EINTERNAL;
    }
}

void require(bool ok, const char* what) {
    if (!ok) fail(errc::invalid_argument, what);
}

// Returned strings are malloc'd so dk_string_free stays a plain free().
char* dup_string(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) fail(errc::internal, "out of memory");
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

void emit(char** out_json, const json& j) { *out_json = dup_string(j.dump()); }

SumPath path_of(const char* path) {
    return path ? jsonio::parse_path(path) : SumPath::automatic;
}

json parse_json_text(const char* text, const char* what) {
    require(text != nullptr, what);
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) fail(errc::parse, std::string("malformed JSON in ") + what);
    return j;
}

SearchSpec parse_spec(const char* spec_json) {
    SearchSpec spec;
    if (!spec_json) return spec;
    json j = parse_json_text(spec_json, "search spec");
    if (!j.is_object()) fail(errc::parse, "search spec must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key == "k") spec.k = value.get<int64_t>();
        else if (key == "m") spec.m = value.get<int64_t>();
        else if (key == "set_size") spec.set_size = value.get<size_t>();
        else if (key == "size_max") spec.size_max = value.get<size_t>();
        else if (key == "universe") spec.universe = value.get<int64_t>();
        else if (key == "mode") spec.mode = jsonio::parse_mode(value.get<std::string>());
        else if (key == "samples") spec.samples = value.get<uint64_t>();
        else if (key == "seed") spec.seed = value.get<uint64_t>();
        else if (key == "family") spec.family = jsonio::parse_family(value.get<std::string>());
        else if (key == "budget") spec.budget = value.get<uint64_t>();
        else if (key == "witness_cap") spec.witness_cap = value.get<size_t>();
        else if (key == "path") spec.path = jsonio::parse_path(value.get<std::string>());
        else fail(errc::parse, "unknown search spec field '" + key + "'");
    }
    return spec;
}

json lemma_outcomes_for(const IntSet& a, int64_t k, uint64_t* violations) {
    json outcomes = json::array();
    uint64_t bad = 0;
    auto push = [&](const LemmaOutcome& out, const std::string& ordering) {
        json e = jsonio::lemma_outcome_json(out);
        if (!ordering.empty()) e["ordering"] = ordering;
        if (out.violation) ++bad;
        outcomes.push_back(std::move(e));
    };
    AnalysisContext ctx = make_context(a, k);
    for (size_t i = 1; i <= ctx.decomp.class_count(); ++i)
        push(class_parity_check(ctx, i), "");
    if (ctx.fact.kind == Factorization::Kind::prime_power && ctx.first_nondiv) {
        for (size_t i : ctx.decomp.partial_indices())
            if (i != *ctx.first_nondiv) push(delta_floor_primepower_check(ctx, i), "");
    }
    if (ctx.fact.kind == Factorization::Kind::semiprime && ctx.decomp.class_count() >= 2) {
        AnalysisContext swapped = make_context_ordered(a, k, ctx.fact.q, ctx.fact.p);
        std::string o1 = std::to_string(ctx.fact.p) + "," + std::to_string(ctx.fact.q);
        std::string o2 = std::to_string(ctx.fact.q) + "," + std::to_string(ctx.fact.p);
        for (size_t i : ctx.decomp.partial_indices()) {
            push(delta_floor_semiprime_check(ctx, i), o1);
            push(delta_floor_semiprime_check(swapped, i), o2);
        }
    }
    if (violations) *violations = bad;
    return outcomes;
}

} // namespace

extern "C" {

const char* dk_version(void) { return "0.1.0"; }

const char* dk_status_name(dk_status s) {
    switch (s) {
        case DK_OK: return "ok";
        case DK_EINVAL: return "invalid_argument";
        case DK_EOVERFLOW: return "overflow";
        case DK_EEMPTY: return "empty_set";
        case DK_EPRECONDITION: return "precondition";
        case DK_EMODULUS: return "modulus_mismatch";
        case DK_EINDEX: return "index_range";
        case DK_EBUDGET: return "budget_exceeded";
        case DK_EPARSE: return "parse";
        case DK_EIO: return "io";
        case DK_EUNKNOWN_BOUND: return "unknown_bound";
        case DK_EINTERNAL: return "internal";
    }
    return "unknown";
}

const char* dk_last_error(void) { return g_last_error.c_str(); }

void dk_string_free(char* s) { std::free(s); }

void dk_set_threads(int n) { config::set_threads(n); }

void dk_set_bit_window(uint64_t bits) { config::set_bit_window(bits); }

dk_status dk_set_create(const int64_t* values, size_t n, dk_intset** out) {
    return wrap([&] {
        require(out && (values || n == 0), "null argument");
        *out = new dk_intset{IntSet::from_values(std::vector<int64_t>(values, values + n))};
    });
}

void dk_set_free(dk_intset* s) { delete s; }

size_t dk_set_size(const dk_intset* s) { return s ? s->v.size() : 0; }

dk_status dk_set_elements(const dk_intset* s, int64_t* buf, size_t cap) {
    return wrap([&] {
        require(s && (buf || cap == 0), "null argument");
        if (cap < s->v.size()) fail(errc::index_range, "buffer smaller than the set");
        std::copy(s->v.elements().begin(), s->v.elements().end(), buf);
    });
}

dk_status dk_set_from_file(const char* path, dk_intset** out, size_t* duplicates) {
    return wrap([&] {
        require(path && out, "null argument");
        ReadResult r = read_set_file(path);
        if (duplicates) *duplicates = r.duplicates;
        *out = new dk_intset{std::move(r.set)};
    });
}

dk_status dk_set_write_file(const dk_intset* s, const char* path) {
    return wrap([&] {
        require(s && path, "null argument");
        write_set_file(s->v, path, false);
    });
}

dk_status dk_dilate(const dk_intset* s, int64_t factor, dk_intset** out) {
    return wrap([&] {
        require(s && out, "null argument");
        *out = new dk_intset{dilate(s->v, factor)};
    });
}

dk_status dk_minkowski_sum(const dk_intset* a, const dk_intset* b, dk_intset** out) {
    return wrap([&] {
        require(a && b && out, "null argument");
        *out = new dk_intset{minkowski_sum(a->v, b->v)};
    });
}

dk_status dk_evaluate_form(const int64_t* coeffs, size_t arity, const dk_intset* a,
                           const char* path, dk_intset** out) {
    return wrap([&] {
        require(coeffs && a && out, "null argument");
        LinearForm form{std::vector<int64_t>(coeffs, coeffs + arity)};
        *out = new dk_intset{evaluate_form(form, a->v, path_of(path))};
    });
}

dk_status dk_evaluate_form_size(const int64_t* coeffs, size_t arity, const dk_intset* a,
                                const char* path, uint64_t* out_size) {
    return wrap([&] {
        require(coeffs && a && out_size, "null argument");
        LinearForm form{std::vector<int64_t>(coeffs, coeffs + arity)};
        *out_size = evaluate_form_size(form, a->v, path_of(path));
    });
}

dk_status dk_normalize(const dk_intset* s, dk_intset** out, int64_t* shift, int64_t* scale) {
    return wrap([&] {
        require(s && out, "null argument");
        Normalized n = normalize_set(s->v);
        if (shift) *shift = n.shift;
        if (scale) *scale = n.scale;
        *out = new dk_intset{std::move(n.set)};
    });
}

dk_status dk_decompose_json(const dk_intset* s, int64_t k, int with_elements, int with_deltas,
                            char** out_json) {
    return wrap([&] {
        require(s && out_json, "null argument");
        ResidueDecomposition d = decompose(s->v, k);
        json o = jsonio::decomposition_json(d, with_elements != 0);
        if (with_deltas) o["deltas"] = jsonio::deltas_json(d, s->v, with_elements != 0);
        emit(out_json, o);
    });
}

dk_status dk_check_json(const char* bound_name, const dk_intset* a, int64_t k, int64_t m,
                        const char* path, char** out_json) {
    return wrap([&] {
        require(bound_name && a && out_json, "null argument");
        std::string name = bound_name;
        SumPath p = path_of(path);
        BoundReport rep;
        if (name == "thm") rep = theorem_check(a->v, k, p);
        else if (name == "coarse") rep = coarse_bound_check(a->v, k, p);
        else if (name == "pair") rep = coprime_pair_check(m, k, a->v, a->v, p);
        else if (name == "min_growth") rep = min_growth_check(m, k, a->v, p);
        else if (name == "full_residue") rep = full_residue_check(k, a->v, p);
        else if (name == "delta_sum") rep = delta_sum_check(a->v, k);
        else if (name == "chowla" || name == "l6" || name == "l8")
            fail(errc::unknown_bound,
                 "'" + name + "' operates on residue sets; use the modular verify sweeps");
        else if (name == "class_parity" || name == "delta_floor_pp" || name == "delta_floor_sp")
            fail(errc::unknown_bound,
                 "'" + name + "' is class-level; use dk_lemmas_json or dk_hunt_json");
        else {
            std::string names;
            for (const auto& n : bound_registry_names())
                names += (names.empty() ? "" : ", ") + n;
            fail(errc::unknown_bound, "unknown bound '" + name + "'; registry: " + names);
        }
        emit(out_json, jsonio::report_json(rep));
    });
}

dk_status dk_check_pair_json(int64_t n, int64_t m, const dk_intset* a, const dk_intset* b,
                             const char* path, char** out_json) {
    return wrap([&] {
        require(a && b && out_json, "null argument");
        emit(out_json, jsonio::report_json(coprime_pair_check(n, m, a->v, b->v, path_of(path))));
    });
}

dk_status dk_report_json(const dk_intset* a, int64_t k, int64_t m, const char* path,
                         char** out_json) {
    return wrap([&] {
        require(a && out_json, "null argument");
        SumPath p = path_of(path);
        json arr = json::array();
        auto attempt = [&](const char* name, auto&& fn) {
            try {
                arr.push_back(jsonio::report_json(fn()));
            } catch (const Error& e) {
                arr.push_back(json{{"bound", name}, {"skipped", e.what()}});
            }
        };
        attempt("thm", [&] { return theorem_check(a->v, k, p); });
        attempt("coarse", [&] { return coarse_bound_check(a->v, k, p); });
        attempt("pair", [&] { return coprime_pair_check(m, k, a->v, a->v, p); });
        attempt("min_growth", [&] { return min_growth_check(m, k, a->v, p); });
        attempt("full_residue", [&] { return full_residue_check(k, a->v, p); });
        attempt("delta_sum", [&] { return delta_sum_check(a->v, k); });
        emit(out_json, arr);
    });
}

dk_status dk_lemmas_json(const dk_intset* a, int64_t k, char** out_json) {
    return wrap([&] {
        require(a && out_json, "null argument");
        uint64_t violations = 0;
        json outcomes = lemma_outcomes_for(a->v, k, &violations);
        json o;
        o["k"] = k;
        o["size"] = a->v.size();
        o["outcomes"] = std::move(outcomes);
        o["violations"] = violations;
        emit(out_json, o);
    });
}

dk_status dk_verify_chowla_json(int64_t max_n, char** out_json) {
    return wrap([&] {
        require(out_json != nullptr, "null argument");
        emit(out_json, jsonio::sweep_json(chowla_sweep(max_n)));
    });
}

dk_status dk_verify_l6_json(int64_t max_n, char** out_json) {
    return wrap([&] {
        require(out_json != nullptr, "null argument");
        emit(out_json, jsonio::sweep_json(stabilizer_sweep(max_n)));
    });
}

dk_status dk_verify_l8_json(const int64_t* moduli, size_t count, char** out_json) {
    return wrap([&] {
        require(out_json && (moduli || count == 0), "null argument");
        emit(out_json,
             jsonio::sweep_json(mixed_unit_sweep(std::vector<int64_t>(moduli, moduli + count))));
    });
}

dk_status dk_extremal_json(const char* spec_json, char** out_json) {
    return wrap([&] {
        require(out_json != nullptr, "null argument");
        emit(out_json, jsonio::search_json(extremal_min(parse_spec(spec_json))));
    });
}

dk_status dk_hunt_json(const char* bound_name, const char* spec_json, char** out_json) {
    return wrap([&] {
        require(bound_name && out_json, "null argument");
        emit(out_json, jsonio::hunt_json(hunt_counterexamples(parse_spec(spec_json), bound_name)));
    });
}

dk_status dk_bound_names_json(char** out_json) {
    return wrap([&] {
        require(out_json != nullptr, "null argument");
        emit(out_json, json(bound_registry_names()));
    });
}

dk_status dk_regime_json(const char* params_json, char** out_json) {
    return wrap([&] {
        require(out_json != nullptr, "null argument");
        json j = parse_json_text(params_json, "regime params");
        if (!j.is_object()) fail(errc::parse, "regime params must be a JSON object");
        int64_t k = 3, exhaustive_universe = 0, sample_universe = 0;
        std::vector<size_t> sizes;
        uint64_t samples_per_size = 0, seed = 0;
        for (const auto& [key, value] : j.items()) {
            if (key == "k") k = value.get<int64_t>();
            else if (key == "exhaustive_universe") exhaustive_universe = value.get<int64_t>();
            else if (key == "sample_sizes") sizes = value.get<std::vector<size_t>>();
            else if (key == "samples_per_size") samples_per_size = value.get<uint64_t>();
            else if (key == "sample_universe") sample_universe = value.get<int64_t>();
            else if (key == "seed") seed = value.get<uint64_t>();
            else fail(errc::parse, "unknown regime params field '" + key + "'");
        }
        emit(out_json, jsonio::regime_json(regime_sweep(k, exhaustive_universe, sizes,
                                                        samples_per_size, sample_universe, seed)));
    });
}

dk_status dk_margin_json(int64_t k, uint64_t n_from, uint64_t n_to, const char* family,
                         const char* path, char** out_json) {
    return wrap([&] {
        require(out_json != nullptr, "null argument");
        SetFamily f = family ? jsonio::parse_family(family) : SetFamily::ap;
        emit(out_json,
             jsonio::margin_json(k, f, margin_profile(k, n_from, n_to, f, path_of(path))));
    });
}

dk_status dk_margin_csv(int64_t k, uint64_t n_from, uint64_t n_to, const char* family,
                        const char* path, char** out_csv) {
    return wrap([&] {
        require(out_csv != nullptr, "null argument");
        SetFamily f = family ? jsonio::parse_family(family) : SetFamily::ap;
        *out_csv = dup_string(jsonio::margin_csv(margin_profile(k, n_from, n_to, f, path_of(path))));
    });
}

} // extern "C"
