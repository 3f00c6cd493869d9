#include "residue.hpp"

#include <algorithm>
#include <map>

#include "util.hpp"

namespace dilatekit {

const CongruenceClass& ResidueDecomposition::class_at(size_t index) const {
    if (index < 1 || index > classes_.size())
        fail(errc::index_range, "class index " + std::to_string(index) + " outside [1, " +
                                    std::to_string(classes_.size()) + "]");
    return classes_[index - 1];
}

bool ResidueDecomposition::is_partial(size_t index) const {
    class_at(index);
    return std::binary_search(partial_.begin(), partial_.end(), index);
}

ResidueDecomposition decompose(const IntSet& a, int64_t k) {
    if (a.empty()) fail(errc::empty_set, "cannot decompose the empty set");
    if (k < 2) fail(errc::invalid_argument, "modulus must be at least 2");

    std::map<int64_t, std::vector<int64_t>> buckets;
    for (int64_t v : a.elements()) {
        int64_t r = v % k;
        if (r < 0) r += k;
        buckets[r].push_back(v);
    }

    ResidueDecomposition d;
    d.k_ = k;
    d.source_ = a;
    d.classes_.reserve(buckets.size());
    for (auto& [r, elems] : buckets) {
        CongruenceClass c;
        c.residue = r;
        std::vector<int64_t> quot;
        quot.reserve(elems.size());
        for (int64_t v : elems) quot.push_back((v - r) / k);
        c.quotient = IntSet::from_sorted_unique(std::move(quot));
        c.elements = IntSet::from_sorted_unique(std::move(elems));
        d.classes_.push_back(std::move(c));
    }
    std::stable_sort(d.classes_.begin(), d.classes_.end(),
                     [](const CongruenceClass& x, const CongruenceClass& y) {
                         if (x.elements.size() != y.elements.size())
                             return x.elements.size() > y.elements.size();
                         return x.residue < y.residue;
                     });

    for (size_t i = 0; i < d.classes_.size(); ++i) {
        const CongruenceClass& c = d.classes_[i];
        bool full_projection = residue_count(c.quotient, k) == static_cast<uint64_t>(k);
        (full_projection ? d.full_ : d.partial_).push_back(i + 1);
        bool full_literal = c.quotient.size() >= static_cast<size_t>(k);
        (full_literal ? d.full_literal_ : d.partial_literal_).push_back(i + 1);
    }
    return d;
}

DeltaSet delta_set(const ResidueDecomposition& d, size_t class_index, const IntSet& source) {
    if (!(source == d.source()))
        fail(errc::invalid_argument, "set does not match the decomposition source");
    const CongruenceClass& c = d.class_at(class_index);
    IntSet doubled = dilate(c.elements, 2);
    IntSet whole = minkowski_sum(doubled, dilate(source, d.modulus()));
    IntSet own = minkowski_sum(doubled, dilate(c.elements, d.modulus()));
    return DeltaSet{class_index, difference(whole, own)};
}

} // namespace dilatekit
