#include "intset.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <sstream>

#include "util.hpp"

namespace dilatekit {

IntSet IntSet::from_sorted_unique(std::vector<int64_t> v) {
    for (size_t i = 1; i < v.size(); ++i)
        if (v[i - 1] >= v[i])
            fail(errc::invalid_argument, "set elements must be strictly increasing at position " +
                                             std::to_string(i));
    IntSet s;
    s.elems_ = std::move(v);
    return s;
}

IntSet IntSet::from_values(std::span<const int64_t> v) {
    std::vector<int64_t> copy(v.begin(), v.end());
    std::sort(copy.begin(), copy.end());
    copy.erase(std::unique(copy.begin(), copy.end()), copy.end());
    IntSet s;
    s.elems_ = std::move(copy);
    return s;
}

IntSet IntSet::from_values(std::initializer_list<int64_t> v) {
    return from_values(std::span<const int64_t>(v.begin(), v.size()));
}

IntSet IntSet::interval(int64_t lo, int64_t hi) {
    if (lo > hi) fail(errc::invalid_argument, "empty interval");
    std::vector<int64_t> v;
    v.reserve(static_cast<size_t>(hi - lo + 1));
    for (int64_t x = lo; x <= hi; ++x) v.push_back(x);
    IntSet s;
    s.elems_ = std::move(v);
    return s;
}

int64_t IntSet::min() const {
    if (elems_.empty()) fail(errc::empty_set, "min of empty set");
    return elems_.front();
}

int64_t IntSet::max() const {
    if (elems_.empty()) fail(errc::empty_set, "max of empty set");
    return elems_.back();
}

bool IntSet::contains(int64_t v) const {
    return std::binary_search(elems_.begin(), elems_.end(), v);
}

LinearForm::LinearForm(std::vector<int64_t> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) fail(errc::invalid_argument, "form needs at least one coefficient");
    for (size_t i = 0; i < coeffs_.size(); ++i)
        if (coeffs_[i] == 0)
            fail(errc::invalid_argument,
                 "zero coefficient at position " + std::to_string(i + 1));
}

LinearForm::LinearForm(std::initializer_list<int64_t> coeffs)
    : LinearForm(std::vector<int64_t>(coeffs)) {}

bool validate_normalized_form(const LinearForm& f) {
    if (f.arity() != 2) return false;
    int64_t m = f.coeff(0), k = f.coeff(1);
    if (m == 0 || k < 1) return false;
    int64_t am = m < 0 ? -m : m;
    if (k < am) return false;
    return std::gcd(am, k) == 1;
}

IntSet dilate(const IntSet& a, int64_t factor) {
    auto in = a.elements();
    std::vector<int64_t> out(in.size());
    if (!a.empty()) {
        // A linear map is monotone, so overflow can only occur at the extremes.
        checked_mul(a.min(), factor);
        checked_mul(a.max(), factor);
    }
    if (factor >= 0) {
        for (size_t i = 0; i < in.size(); ++i) out[i] = in[i] * factor;
    } else {
        for (size_t i = 0; i < in.size(); ++i) out[in.size() - 1 - i] = in[i] * factor;
    }
    if (factor == 0 && !out.empty()) out.resize(1);
    return IntSet::from_sorted_unique(std::move(out));
}

IntSet difference(const IntSet& a, const IntSet& b) {
    std::vector<int64_t> out;
    std::set_difference(a.elements().begin(), a.elements().end(), b.elements().begin(),
                        b.elements().end(), std::back_inserter(out));
    return IntSet::from_sorted_unique(std::move(out));
}

Normalized normalize_set(const IntSet& a) {
    if (a.empty()) fail(errc::empty_set, "cannot normalize the empty set");
    int64_t shift = a.min();
    std::vector<int64_t> t;
    t.reserve(a.size());
    for (int64_t v : a.elements()) t.push_back(v - shift);
    int64_t scale = diff_gcd(t);
    if (scale == 0) scale = 1; // singleton
    if (scale > 1)
        for (auto& v : t) v /= scale;
    return Normalized{IntSet::from_sorted_unique(std::move(t)), shift, scale};
}

namespace {

bool looks_like_json(const std::string& content) {
    for (char c : content) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        return c == '[';
    }
    return false;
}

int64_t parse_int64(const std::string& tok, const std::string& where) {
    size_t pos = 0;
    int64_t v = 0;
    try {
        v = std::stoll(tok, &pos);
    } catch (const std::exception&) {
        fail(errc::parse, where + ": not an integer: '" + tok + "'");
    }
    if (pos != tok.size()) fail(errc::parse, where + ": trailing characters in '" + tok + "'");
    return v;
}

} // namespace

ReadResult parse_set_text(const std::string& content, const std::string& origin) {
    std::vector<int64_t> values;
    if (looks_like_json(content)) {
        // Minimal array-of-integers grammar; anything else is a parse error.
        size_t i = 0;
        auto skip_ws = [&] {
            while (i < content.size() && std::isspace(static_cast<unsigned char>(content[i]))) ++i;
        };
        skip_ws();
        if (i >= content.size() || content[i] != '[') fail(errc::parse, origin + ": expected '['");
        ++i;
        skip_ws();
        if (i < content.size() && content[i] == ']') {
            ++i;
        } else {
            while (true) {
                skip_ws();
                size_t start = i;
                if (i < content.size() && (content[i] == '-' || content[i] == '+')) ++i;
                while (i < content.size() && std::isdigit(static_cast<unsigned char>(content[i])))
                    ++i;
                if (i == start) fail(errc::parse, origin + ": expected integer in array");
                values.push_back(parse_int64(content.substr(start, i - start), origin));
                skip_ws();
                if (i < content.size() && content[i] == ',') {
                    ++i;
                    continue;
                }
                if (i < content.size() && content[i] == ']') {
                    ++i;
                    break;
                }
                fail(errc::parse, origin + ": expected ',' or ']'");
            }
        }
        skip_ws();
        if (i != content.size()) fail(errc::parse, origin + ": trailing content after array");
    } else {
        std::istringstream in(content);
        std::string line;
        size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            size_t b = line.find_first_not_of(" \t\r");
            if (b == std::string::npos || line[b] == '#') continue;
            size_t e = line.find_last_not_of(" \t\r");
            values.push_back(
                parse_int64(line.substr(b, e - b + 1), origin + ":" + std::to_string(lineno)));
        }
    }
    size_t before = values.size();
    IntSet s = IntSet::from_values(values);
    uint64_t duplicates = before - s.size();
    return ReadResult{std::move(s), duplicates};
}

ReadResult read_set_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(errc::io, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_set_text(buf.str(), path);
}

void write_set_file(const IntSet& a, const std::string& path, bool as_json) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(errc::io, "cannot open " + path + " for writing");
    if (as_json) {
        out << '[';
        bool first = true;
        for (int64_t v : a.elements()) {
            if (!first) out << ',';
            out << v;
            first = false;
        }
        out << "]\n";
    } else {
        for (int64_t v : a.elements()) out << v << '\n';
    }
    if (!out) fail(errc::io, "write failed for " + path);
}

} // namespace dilatekit
