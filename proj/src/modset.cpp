#include "modset.hpp"

#include <numeric>

#include "util.hpp"

namespace dilatekit {

namespace {

size_t words_for(int64_t n) { return static_cast<size_t>((n + 63) / 64); }

int64_t reduce(int64_t v, int64_t n) {
    int64_t r = v % n;
    return r < 0 ? r + n : r;
}

} // namespace

ModSet::ModSet(int64_t modulus) : n_(modulus) {
    if (modulus < 1) fail(errc::invalid_argument, "modulus must be at least 1");
    mask_.assign(words_for(modulus), 0);
}

ModSet ModSet::of(int64_t modulus, std::initializer_list<int64_t> residues) {
    return from_residues(modulus, std::span<const int64_t>(residues.begin(), residues.size()));
}

ModSet ModSet::from_residues(int64_t modulus, std::span<const int64_t> residues) {
    ModSet s(modulus);
    for (int64_t r : residues) s.insert(r);
    return s;
}

ModSet ModSet::from_mask(int64_t modulus, uint64_t mask) {
    if (modulus < 1 || modulus > 64) fail(errc::invalid_argument, "mask constructor needs modulus in [1, 64]");
    if (modulus < 64 && (mask >> modulus) != 0)
        fail(errc::invalid_argument, "mask has bits outside the modulus");
    ModSet s(modulus);
    s.mask_[0] = mask;
    return s;
}

size_t ModSet::size() const {
    size_t c = 0;
    for (uint64_t w : mask_) c += static_cast<size_t>(__builtin_popcountll(w));
    return c;
}

void ModSet::insert(int64_t r) {
    if (r < 0 || r >= n_)
        fail(errc::invalid_argument,
             "residue " + std::to_string(r) + " outside [0, " + std::to_string(n_) + ")");
    mask_[static_cast<size_t>(r) >> 6] |= uint64_t{1} << (r & 63);
}

bool ModSet::contains(int64_t r) const {
    if (r < 0 || r >= n_) return false;
    return (mask_[static_cast<size_t>(r) >> 6] >> (r & 63)) & 1;
}

std::vector<int64_t> ModSet::residues() const {
    std::vector<int64_t> out;
    out.reserve(size());
    for (size_t wi = 0; wi < mask_.size(); ++wi) {
        uint64_t w = mask_[wi];
        while (w) {
            out.push_back(static_cast<int64_t>(wi * 64 + static_cast<size_t>(__builtin_ctzll(w))));
            w &= w - 1;
        }
    }
    return out;
}

ModSet ModSet::rotated(int64_t shift) const {
    int64_t s = reduce(shift, n_);
    ModSet out(n_);
    if (s == 0) {
        out.mask_ = mask_;
        return out;
    }
    // Bit blit: out = (mask << s | mask >> (n - s)) within n bits.
    for (size_t wi = 0; wi < mask_.size(); ++wi) {
        uint64_t w = mask_[wi];
        while (w) {
            int64_t r = static_cast<int64_t>(wi * 64 + static_cast<size_t>(__builtin_ctzll(w)));
            w &= w - 1;
            int64_t t = r + s;
            if (t >= n_) t -= n_;
            out.mask_[static_cast<size_t>(t) >> 6] |= uint64_t{1} << (t & 63);
        }
    }
    return out;
}

ModSet mod_sum(const ModSet& a, const ModSet& b) {
    if (a.modulus() != b.modulus())
        fail(errc::modulus_mismatch, "moduli " + std::to_string(a.modulus()) + " and " +
                                         std::to_string(b.modulus()) + " differ");
    const ModSet& small = a.size() <= b.size() ? a : b;
    const ModSet& big = a.size() <= b.size() ? b : a;
    ModSet out(a.modulus());
    for (int64_t r : small.residues()) {
        ModSet rot = big.rotated(r);
        for (int64_t v : rot.residues()) out.insert(v);
    }
    return out;
}

ModSet project_mod(const IntSet& a, int64_t n) {
    if (n < 2) fail(errc::invalid_argument, "projection needs modulus >= 2");
    ModSet s(n);
    for (int64_t v : a.elements()) s.insert(reduce(v, n));
    return s;
}

uint64_t residue_count(const IntSet& a, int64_t n) {
    if (n < 1) fail(errc::invalid_argument, "residue count needs modulus >= 1");
    if (n == 1) return a.empty() ? 0 : 1;
    return project_mod(a, n).size();
}

BoundReport chowla_check(const ModSet& a, const ModSet& b) {
    if (a.modulus() != b.modulus())
        fail(errc::modulus_mismatch, "moduli of A and B differ");
    int64_t n = a.modulus();
    if (n < 2) fail(errc::invalid_argument, "modulus must be at least 2");
    if (a.empty()) fail(errc::precondition, "A is empty");
    if (b.empty()) fail(errc::precondition, "B is empty");
    if (!b.contains(0)) fail(errc::precondition, "0 is not in B");
    for (int64_t r : b.residues())
        if (r != 0 && std::gcd(r, n) != 1)
            fail(errc::precondition, "element " + std::to_string(r) + " of B is not a unit mod " +
                                         std::to_string(n));
    BoundReport rep;
    rep.bound_name = "chowla";
    rep.k = n;
    rep.size = a.size();
    rep.actual = mod_sum(a, b).size();
    rep.bound = std::min<int64_t>(n, static_cast<int64_t>(a.size() + b.size()) - 1);
    rep.hypotheses.push_back({"zero_in_b", true});
    rep.hypotheses.push_back({"nonzero_b_units", true});
    return finish_report(std::move(rep));
}

std::optional<CosetStructure> stabilizer_decompose(const ModSet& a, int64_t alpha) {
    int64_t n = a.modulus();
    if (n < 2) fail(errc::invalid_argument, "modulus must be at least 2");
    if (a.empty()) fail(errc::empty_set, "A is empty");
    int64_t s = reduce(alpha, n);
    if (s == 0) fail(errc::invalid_argument, "shift is 0 mod n");
    if (!(a.rotated(s) == a)) return std::nullopt;
    int64_t d = std::gcd(n, s);
    ModSet index(d);
    for (int64_t r : a.residues()) index.insert(r % d);
    // Internal consistency: the cosets over the index set rebuild A exactly.
    ModSet rebuilt(n);
    for (int64_t beta : index.residues())
        for (int64_t t = beta; t < n; t += d) rebuilt.insert(t);
    if (!(rebuilt == a)) fail(errc::internal, "coset reconstruction mismatch");
    return CosetStructure{d, std::move(index)};
}

namespace {

bool is_prime(int64_t n) {
    if (n < 2) return false;
    for (int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace

BoundReport mixed_unit_check(const ModSet& a, int64_t q, const ModSet& b) {
    if (a.modulus() != b.modulus())
        fail(errc::modulus_mismatch, "moduli of A and B differ");
    int64_t k = a.modulus();
    if (k <= 2 || is_prime(k))
        fail(errc::precondition, "modulus " + std::to_string(k) + " is not composite > 2");
    if (a.empty()) fail(errc::precondition, "A is empty");
    if (b.empty()) fail(errc::precondition, "B is empty");
    if (!b.contains(0)) fail(errc::precondition, "0 is not in B");
    int64_t qr = reduce(q, k);
    if (std::gcd(qr, k) == 1)
        fail(errc::precondition, "q = " + std::to_string(qr) + " is a unit mod " + std::to_string(k));
    for (int64_t r : b.residues())
        if (r != 0 && r != qr && std::gcd(r, k) != 1)
            fail(errc::precondition, "element " + std::to_string(r) +
                                         " of B is neither 0, q, nor a unit mod " +
                                         std::to_string(k));
    ModSet step = ModSet::of(k, {0});
    step.insert(qr == 0 ? 0 : qr); // q may reduce to 0; then the pair {0, q} collapses
    uint64_t growth = mod_sum(a, step).size();
    if (growth < a.size() + 1)
        fail(errc::precondition, "|A + {0, q}| = " + std::to_string(growth) +
                                     " does not exceed |A| = " + std::to_string(a.size()));
    BoundReport rep;
    rep.bound_name = "l8";
    rep.k = k;
    rep.size = a.size();
    rep.actual = mod_sum(a, b).size();
    rep.bound = std::min<int64_t>(k, static_cast<int64_t>(a.size() + b.size()) - 1);
    rep.hypotheses.push_back({"zero_in_b", true});
    rep.hypotheses.push_back({"b_within_pair_and_units", true});
    rep.hypotheses.push_back({"pair_grows_a", true});
    return finish_report(std::move(rep));
}

SweepResult chowla_sweep(int64_t max_n) {
    if (max_n < 2 || max_n > 24)
        fail(errc::invalid_argument, "sweep range must lie in [2, 24]");
    SweepResult res;
    res.lemma = "chowla";
    for (int64_t n = 2; n <= max_n; ++n) {
        uint64_t unit_mask = 0;
        for (int64_t r = 1; r < n; ++r)
            if (std::gcd(r, n) == 1) unit_mask |= uint64_t{1} << r;
        uint64_t full = (n == 64) ? ~uint64_t{0} : (uint64_t{1} << n) - 1;
        for (uint64_t am = 1; am <= full; ++am) {
            for (uint64_t bm = 1; bm <= full; bm += 2) { // bit 0 forced: 0 in B
                if ((bm & ~(unit_mask | 1)) != 0) {
                    ++res.vacuous;
                    continue;
                }
                ++res.instances_checked;
                BoundReport rep = chowla_check(ModSet::from_mask(n, am), ModSet::from_mask(n, bm));
                if (!rep.satisfied) {
                    ModViolation v;
                    v.kind = "bound_failed";
                    v.modulus = n;
                    v.a = ModSet::from_mask(n, am).residues();
                    v.b = ModSet::from_mask(n, bm).residues();
                    v.actual = rep.actual;
                    v.bound = static_cast<int64_t>(rep.bound);
                    res.violations.push_back(std::move(v));
                }
            }
        }
    }
    return res;
}

SweepResult stabilizer_sweep(int64_t max_n) {
    if (max_n < 2 || max_n > 24)
        fail(errc::invalid_argument, "sweep range must lie in [2, 24]");
    SweepResult res;
    res.lemma = "l6";
    for (int64_t n = 2; n <= max_n; ++n) {
        uint64_t full = (uint64_t{1} << n) - 1;
        for (uint64_t am = 1; am <= full; ++am) {
            ModSet a = ModSet::from_mask(n, am);
            for (int64_t alpha = 1; alpha < n; ++alpha) {
                ++res.instances_checked;
                bool fixed = a.rotated(alpha) == a;
                auto record = [&](const std::string& kind) {
                    ModViolation v;
                    v.kind = kind;
                    v.modulus = n;
                    v.a = a.residues();
                    v.param = alpha;
                    res.violations.push_back(std::move(v));
                };
                std::optional<CosetStructure> st;
                try {
                    st = stabilizer_decompose(a, alpha);
                } catch (const Error& e) {
                    if (e.code() != errc::internal) throw;
                    record("internal_error");
                    continue;
                }
                if (st.has_value() != fixed) {
                    record("structure_vs_fixed_point");
                    continue;
                }
                if (!st) continue;
                if (st->d != std::gcd(n, alpha)) record("wrong_subgroup");
                // |A| must be a multiple of the coset length n/d.
                if (a.size() % static_cast<size_t>(n / st->d) != 0) record("size_not_multiple");
                ModSet rebuilt(n);
                for (int64_t beta : st->index.residues())
                    for (int64_t t = beta; t < n; t += st->d) rebuilt.insert(t);
                if (!(rebuilt == a)) record("reconstruction_mismatch");
            }
        }
    }
    return res;
}

SweepResult mixed_unit_sweep(std::span<const int64_t> moduli) {
    SweepResult res;
    res.lemma = "l8";
    for (int64_t k : moduli) {
        if (k <= 2 || k > 24 || is_prime(k))
            fail(errc::invalid_argument,
                 "modulus " + std::to_string(k) + " is not a composite in (2, 24]");
        uint64_t unit_mask = 0;
        for (int64_t r = 1; r < k; ++r)
            if (std::gcd(r, k) == 1) unit_mask |= uint64_t{1} << r;
        uint64_t full = (uint64_t{1} << k) - 1;
        for (int64_t q = 0; q < k; ++q) {
            if (std::gcd(q, k) == 1) continue;
            uint64_t allowed = (unit_mask | 1 | (uint64_t{1} << q)) & ~uint64_t{1};
            for (uint64_t am = 1; am <= full; ++am) {
                ModSet a = ModSet::from_mask(k, am);
                // Submask enumeration of the optional part of B (0 always in).
                uint64_t sub = allowed;
                for (;;) {
                    uint64_t bm = sub | 1;
                    try {
                        ++res.instances_checked;
                        BoundReport rep = mixed_unit_check(a, q, ModSet::from_mask(k, bm));
                        if (!rep.satisfied) {
                            ModViolation v;
                            v.kind = "bound_failed";
                            v.modulus = k;
                            v.a = a.residues();
                            v.b = ModSet::from_mask(k, bm).residues();
                            v.param = q;
                            v.actual = rep.actual;
                            v.bound = static_cast<int64_t>(rep.bound);
                            res.violations.push_back(std::move(v));
                        }
                    } catch (const Error& e) {
                        if (e.code() != errc::precondition) throw;
                        --res.instances_checked;
                        ++res.vacuous;
                    }
                    if (sub == 0) break;
                    sub = (sub - 1) & allowed;
                }
            }
        }
    }
    return res;
}

} // namespace dilatekit
