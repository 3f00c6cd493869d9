#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <vector>

#include "intset.hpp"
#include "parallel.hpp"
#include "util.hpp"

namespace dilatekit {

namespace {

struct SumResult {
    uint64_t count = 0;
    std::vector<int64_t> elems; // populated only when materializing
};

// Splitting a sum by residue class pays for itself only above this core cost.
constexpr uint64_t kSplitThresholdWords = uint64_t{1} << 21;
constexpr uint64_t kNaivePairBudget = 100'000'000;
// Ranges near the int64 boundary skip the affine machinery entirely.
constexpr uint64_t kAbsoluteRangeCap = uint64_t{1} << 58;

uint64_t words_for_bits(uint64_t bits) { return (bits + 63) / 64; }

uint64_t span_of(const std::vector<int64_t>& v) {
    return static_cast<uint64_t>(v.back()) - static_cast<uint64_t>(v.front());
}

// Cost model for the dense kernel: offsets from one side, word-aligned ORs over
// the other side's extent.
uint64_t dense_cost(const std::vector<int64_t>& a, const std::vector<int64_t>& b) {
    uint64_t wa = words_for_bits(span_of(a) + 1) + 1;
    uint64_t wb = words_for_bits(span_of(b) + 1) + 1;
    return std::min(a.size() * wb, b.size() * wa);
}

// Dense kernel over zero-based inputs; result bits land in dst (dst_bits wide).
// The smaller-cost side becomes the source bitmap; the other side's elements are
// grouped by shift residue so the hot loop is a word-aligned OR.
void bit_kernel(const std::vector<int64_t>& a, const std::vector<int64_t>& b,
                std::vector<uint64_t>& dst, uint64_t dst_bits) {
    uint64_t wa = words_for_bits(static_cast<uint64_t>(a.back()) + 1);
    uint64_t wb = words_for_bits(static_cast<uint64_t>(b.back()) + 1);
    const std::vector<int64_t>& xs = b.size() * wa <= a.size() * wb ? a : b;
    const std::vector<int64_t>& ys = b.size() * wa <= a.size() * wb ? b : a;

    size_t x_words = static_cast<size_t>(words_for_bits(static_cast<uint64_t>(xs.back()) + 1));
    std::vector<uint64_t> src(x_words, 0);
    for (int64_t v : xs) src[static_cast<uint64_t>(v) >> 6] |= uint64_t{1} << (v & 63);

    std::vector<std::vector<uint64_t>> buckets(64);
    for (int64_t y : ys)
        buckets[static_cast<uint64_t>(y) & 63].push_back(static_cast<uint64_t>(y) >> 6);

    auto run_buckets = [&](std::vector<uint64_t>& out, size_t rb, size_t re) {
        std::vector<uint64_t> shifted(x_words + 1);
        for (size_t r = rb; r < re; ++r) {
            if (buckets[r].empty()) continue;
            if (r == 0) {
                std::copy(src.begin(), src.end(), shifted.begin());
                shifted[x_words] = 0;
            } else {
                shifted[0] = src[0] << r;
                for (size_t i = 1; i < x_words; ++i)
                    shifted[i] = (src[i] << r) | (src[i - 1] >> (64 - r));
                shifted[x_words] = src[x_words - 1] >> (64 - r);
            }
            size_t width = x_words + (r != 0 ? 1 : 0);
            for (uint64_t wq : buckets[r]) {
                // The top spill word can be zero yet lie past the destination.
                size_t w = std::min(width, out.size() - static_cast<size_t>(wq));
                uint64_t* out_at = out.data() + wq;
                for (size_t i = 0; i < w; ++i) out_at[i] |= shifted[i];
            }
        }
    };

    uint64_t est_cost = ys.size() * (x_words + 1);
    if (effective_threads() > 1 && est_cost > (uint64_t{1} << 23)) {
        size_t nw = static_cast<size_t>(effective_threads());
        std::vector<std::vector<uint64_t>> partial(nw);
        parallel_chunks(64, [&](size_t w, size_t rb, size_t re) {
            partial[w].assign(static_cast<size_t>(words_for_bits(dst_bits)), 0);
            run_buckets(partial[w], rb, re);
        });
        for (auto& p : partial)
            for (size_t i = 0; i < p.size(); ++i) dst[i] |= p[i];
    } else {
        run_buckets(dst, 0, 64);
    }
}

// Sorted k-way merge of the translates {big + y : y in small}; works in absolute
// coordinates and is the fallback beyond the dense window.
SumResult merge_kernel(const std::vector<int64_t>& a, const std::vector<int64_t>& b,
                       bool size_only) {
    const std::vector<int64_t>& big = a.size() >= b.size() ? a : b;
    const std::vector<int64_t>& off = a.size() >= b.size() ? b : a;
    using Cursor = std::pair<int64_t, size_t>; // (value, stream)
    std::priority_queue<Cursor, std::vector<Cursor>, std::greater<>> heap;
    std::vector<size_t> pos(off.size(), 0);
    for (size_t s = 0; s < off.size(); ++s) heap.push({big[0] + off[s], s});
    SumResult res;
    bool have_last = false;
    int64_t last = 0;
    while (!heap.empty()) {
        auto [value, stream] = heap.top();
        heap.pop();
        if (!have_last || value != last) {
            ++res.count;
            if (!size_only) res.elems.push_back(value);
            last = value;
            have_last = true;
        }
        size_t next = ++pos[stream];
        if (next < big.size()) heap.push({big[next] + off[stream], stream});
    }
    return res;
}

SumResult naive_kernel(const IntSet& a, const IntSet& b, bool size_only) {
    uint64_t pairs = static_cast<uint64_t>(a.size()) * b.size();
    if (pairs > kNaivePairBudget)
        fail(errc::budget_exceeded, "naive sum over " + std::to_string(pairs) +
                                        " pairs exceeds the enumeration budget");
    std::vector<int64_t> all;
    all.reserve(static_cast<size_t>(pairs));
    for (int64_t x : a.elements())
        for (int64_t y : b.elements()) all.push_back(checked_add(x, y));
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    SumResult res;
    res.count = all.size();
    if (!size_only) res.elems = std::move(all);
    return res;
}

SumResult sum_rec(std::vector<int64_t> a, std::vector<int64_t> b, bool size_only, bool forced_bits);

// One side lives on an arithmetic progression of difference s; split the other
// side by residue mod s and solve each class as an s-fold compressed subproblem.
// Class results occupy distinct residues mod s, so counts simply add.
SumResult split_by_stride(const std::vector<int64_t>& strided, const std::vector<int64_t>& split,
                          int64_t s, bool size_only, bool forced_bits) {
    std::vector<int64_t> quotient;
    quotient.reserve(strided.size());
    for (int64_t v : strided) quotient.push_back(v / s);

    std::map<int64_t, std::vector<int64_t>> classes;
    for (int64_t v : split) classes[v % s].push_back(v);

    SumResult total;
    std::vector<std::vector<int64_t>> pieces;
    for (auto& [r, cls] : classes) {
        int64_t cls_base = cls.front();
        for (auto& v : cls) v = (v - cls_base) / s;
        SumResult piece = sum_rec(std::move(cls), quotient, size_only, forced_bits);
        total.count += piece.count;
        if (!size_only) {
            for (auto& v : piece.elems) v = v * s + cls_base;
            pieces.push_back(std::move(piece.elems));
        }
    }
    if (!size_only) {
        using Cursor = std::pair<int64_t, size_t>;
        std::priority_queue<Cursor, std::vector<Cursor>, std::greater<>> heap;
        std::vector<size_t> pos(pieces.size(), 0);
        size_t total_elems = 0;
        for (size_t p = 0; p < pieces.size(); ++p) {
            total_elems += pieces[p].size();
            heap.push({pieces[p][0], p});
        }
        total.elems.reserve(total_elems);
        while (!heap.empty()) {
            auto [value, p] = heap.top();
            heap.pop();
            total.elems.push_back(value);
            size_t next = ++pos[p];
            if (next < pieces[p].size()) heap.push({pieces[p][next], p});
        }
    }
    return total;
}

SumResult sum_rec(std::vector<int64_t> a, std::vector<int64_t> b, bool size_only,
                  bool forced_bits) {
    if (a.size() == 1 || b.size() == 1) {
        const std::vector<int64_t>& big = a.size() == 1 ? b : a;
        int64_t t = a.size() == 1 ? a[0] : b[0];
        SumResult res;
        res.count = big.size();
        if (!size_only) {
            res.elems.reserve(big.size());
            for (int64_t v : big) res.elems.push_back(v + t);
        }
        return res;
    }

    int64_t base = a.front() + b.front();
    int64_t a0 = a.front(), b0 = b.front();
    for (auto& v : a) v -= a0;
    for (auto& v : b) v -= b0;

    // Factor out the common stride: (g*A') + (g*B') = g*(A' + B').
    int64_t scale = 1;
    for (;;) {
        int64_t g = std::gcd(diff_gcd(a), diff_gcd(b));
        if (g <= 1) break;
        for (auto& v : a) v /= g;
        for (auto& v : b) v /= g;
        scale *= g;
    }

    uint64_t range_bits = span_of(a) + span_of(b) + 1;
    uint64_t window = config::bit_window();
    int64_t sa = diff_gcd(a), sb = diff_gcd(b);
    int64_t s = std::max(sa, sb);
    SumResult res;
    if (s > 1 && (range_bits > window || dense_cost(a, b) > kSplitThresholdWords)) {
        res = sa >= sb ? split_by_stride(a, b, sa, size_only, forced_bits)
                       : split_by_stride(b, a, sb, size_only, forced_bits);
    } else if (range_bits <= window) {
        std::vector<uint64_t> dst(static_cast<size_t>(words_for_bits(range_bits)), 0);
        bit_kernel(a, b, dst, range_bits);
        if (size_only) {
            for (uint64_t w : dst) res.count += static_cast<uint64_t>(__builtin_popcountll(w));
        } else {
            for (size_t wi = 0; wi < dst.size(); ++wi) {
                uint64_t w = dst[wi];
                while (w) {
                    int bit = __builtin_ctzll(w);
                    res.elems.push_back(static_cast<int64_t>(wi * 64 + static_cast<size_t>(bit)));
                    w &= w - 1;
                }
            }
            res.count = res.elems.size();
        }
    } else if (forced_bits) {
        fail(errc::budget_exceeded, "range of " + std::to_string(range_bits) +
                                         " bits exceeds the dense window of " +
                                         std::to_string(window));
    } else {
        res = merge_kernel(a, b, size_only);
    }
    if (!size_only)
        for (auto& v : res.elems) v = v * scale + base;
    return res;
}

SumResult dispatch(const IntSet& a, const IntSet& b, bool size_only, SumPath path) {
    if (a.empty() || b.empty()) return SumResult{};
    // Sums are monotone in both arguments, so checking the extreme pairs is enough.
    checked_add(a.min(), b.min());
    checked_add(a.max(), b.max());
    switch (path) {
        case SumPath::naive:
            return naive_kernel(a, b, size_only);
        case SumPath::merge:
            return merge_kernel(a.vec(), b.vec(), size_only);
        case SumPath::bits:
        case SumPath::automatic: {
            unsigned __int128 range = static_cast<unsigned __int128>(span_of(a.vec())) +
                                      span_of(b.vec()) + 1;
            if (range >= kAbsoluteRangeCap) {
                if (path == SumPath::bits)
                    fail(errc::budget_exceeded, "range exceeds the dense window");
                return merge_kernel(a.vec(), b.vec(), size_only);
            }
            return sum_rec(a.vec(), b.vec(), size_only, path == SumPath::bits);
        }
    }
    fail(errc::internal, "unknown sum path");
}

} // namespace

IntSet minkowski_sum(const IntSet& a, const IntSet& b, SumPath path) {
    SumResult r = dispatch(a, b, false, path);
    return IntSet::from_sorted_unique(std::move(r.elems));
}

uint64_t minkowski_sum_size(const IntSet& a, const IntSet& b, SumPath path) {
    return dispatch(a, b, true, path).count;
}

IntSet evaluate_form(const LinearForm& f, const IntSet& a, SumPath path) {
    if (a.empty()) fail(errc::empty_set, "form evaluation needs a nonempty set");
    IntSet acc = dilate(a, f.coeff(0));
    for (size_t i = 1; i < f.arity(); ++i) acc = minkowski_sum(acc, dilate(a, f.coeff(i)), path);
    return acc;
}

uint64_t evaluate_form_size(const LinearForm& f, const IntSet& a, SumPath path) {
    if (a.empty()) fail(errc::empty_set, "form evaluation needs a nonempty set");
    if (f.arity() == 1) return a.size();
    IntSet acc = dilate(a, f.coeff(0));
    for (size_t i = 1; i + 1 < f.arity(); ++i)
        acc = minkowski_sum(acc, dilate(a, f.coeff(i)), path);
    return minkowski_sum_size(acc, dilate(a, f.coeff(f.arity() - 1)), path);
}

} // namespace dilatekit
