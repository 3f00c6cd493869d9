#include "json_out.hpp"

#include <sstream>

#include "error.hpp"

namespace dilatekit::jsonio {

namespace {

constexpr size_t kEchoCap = 1000;

json hypotheses_json(const std::vector<Hypothesis>& hs) {
    json arr = json::array();
    for (const auto& h : hs) arr.push_back({{"name", h.name}, {"met", h.met}});
    return arr;
}

json mod_violation_json(const ModViolation& v) {
    json o;
    o["kind"] = v.kind;
    o["modulus"] = v.modulus;
    o["a"] = v.a;
    o["b"] = v.b;
    o["param"] = v.param;
    o["actual"] = v.actual;
    o["bound"] = v.bound;
    return o;
}

json regime_violation_json(const RegimeViolation& v) {
    json o;
    o["check"] = v.check;
    o["set_size"] = v.set_size;
    if (!v.set.empty()) o["set"] = v.set;
    if (v.class_index) o["class_index"] = v.class_index;
    if (!v.ordering.empty()) o["ordering"] = v.ordering;
    if (!v.detail.empty()) o["detail"] = v.detail;
    o["confirmed_naive"] = v.confirmed_naive;
    return o;
}

json bound_tally_json(const BoundTally& t) {
    json o;
    o["bound"] = t.bound_name;
    o["evaluated"] = t.evaluated;
    o["hypotheses_met"] = t.hypotheses_met;
    o["inequality_failures"] = t.inequality_failures;
    o["violations"] = t.violations;
    json ex = json::array();
    for (const auto& v : t.examples) ex.push_back(regime_violation_json(v));
    o["examples"] = std::move(ex);
    return o;
}

json lemma_tally_json(const LemmaTally& t) {
    json o;
    o["lemma"] = t.lemma;
    o["evaluated"] = t.evaluated;
    o["applicable"] = t.applicable;
    o["violations"] = t.violations;
    json ex = json::array();
    for (const auto& v : t.examples) ex.push_back(regime_violation_json(v));
    o["examples"] = std::move(ex);
    return o;
}

json spec_json(const SearchSpec& s) {
    json o;
    o["mode"] = mode_name(s.mode);
    o["k"] = s.k;
    o["m"] = s.m;
    if (s.set_size) o["set_size"] = s.set_size;
    if (s.size_max) o["size_max"] = s.size_max;
    if (s.mode != SearchMode::structured) o["universe"] = s.universe;
    if (s.mode == SearchMode::random) {
        o["samples"] = s.samples;
        o["seed"] = s.seed;
    }
    if (s.mode == SearchMode::structured) o["family"] = family_name(s.family);
    return o;
}

} // namespace

json set_json(const IntSet& a) {
    return json(std::vector<int64_t>(a.elements().begin(), a.elements().end()));
}

json report_json(const BoundReport& r) {
    json o;
    o["bound"] = r.bound_name;
    o["k"] = r.k;
    o["size"] = r.size;
    o["actual"] = r.actual;
    o["bound_value"] = r.bound.str();
    o["margin"] = r.margin.str();
    o["satisfied"] = r.satisfied;
    o["hypotheses"] = hypotheses_json(r.hypotheses);
    return o;
}

json lemma_outcome_json(const LemmaOutcome& out) {
    json o;
    o["lemma"] = out.lemma;
    o["class_index"] = out.class_index;
    o["hypotheses"] = hypotheses_json(out.hypotheses);
    o["applicable"] = out.applicable;
    o["conclusion_holds"] = out.conclusion_holds;
    o["violation"] = out.violation;
    if (out.applicable) {
        o["threshold"] = out.threshold.str();
        o["observed"] = out.observed;
    }
    if (!out.detail.empty()) o["detail"] = out.detail;
    return o;
}

json sweep_json(const SweepResult& r) {
    json o;
    o["lemma"] = r.lemma;
    o["instances_checked"] = r.instances_checked;
    o["vacuous"] = r.vacuous;
    json vs = json::array();
    for (const auto& v : r.violations) vs.push_back(mod_violation_json(v));
    o["violations"] = std::move(vs);
    return o;
}

json decomposition_json(const ResidueDecomposition& d, bool include_elements) {
    json o;
    o["modulus"] = d.modulus();
    o["source_size"] = d.source().size();
    o["class_count"] = d.class_count();
    json cls = json::array();
    for (size_t i = 1; i <= d.class_count(); ++i) {
        const CongruenceClass& c = d.class_at(i);
        json e;
        e["index"] = i;
        e["residue"] = c.residue;
        e["size"] = c.elements.size();
        if (include_elements && c.elements.size() <= kEchoCap) {
            e["quotient"] = set_json(c.quotient);
            e["elements"] = set_json(c.elements);
        }
        cls.push_back(std::move(e));
    }
    o["classes"] = std::move(cls);
    o["partial"] = d.partial_indices();
    o["full"] = d.full_indices();
    o["partial_literal"] = d.partial_indices_literal();
    o["full_literal"] = d.full_indices_literal();
    return o;
}

json deltas_json(const ResidueDecomposition& d, const IntSet& source, bool include_elements) {
    json o;
    o["modulus"] = d.modulus();
    o["class_count"] = d.class_count();
    json rows = json::array();
    uint64_t total = 0;
    for (size_t i = 1; i <= d.class_count(); ++i) {
        IntSet g = delta_set(d, i, source).elements;
        total += g.size();
        json e;
        e["index"] = i;
        e["residue"] = d.class_at(i).residue;
        e["class_size"] = d.class_at(i).elements.size();
        e["gain_size"] = g.size();
        if (include_elements && g.size() <= kEchoCap) e["gain"] = set_json(g);
        rows.push_back(std::move(e));
    }
    o["gains"] = std::move(rows);
    o["gain_total"] = total;
    size_t j = d.class_count();
    o["pair_floor"] = j <= 1 ? 0 : j * (j - 1);
    return o;
}

json search_json(const SearchResult& r) {
    json o = spec_json(r.spec);
    o["minimum"] = r.minimum;
    o["instances_examined"] = r.instances_examined;
    json ws = json::array();
    for (const auto& w : r.witnesses)
        if (w.size() <= kEchoCap) ws.push_back(set_json(w));
    o["witnesses"] = std::move(ws);
    if (r.bound_comparison) o["bound_comparison"] = report_json(*r.bound_comparison);
    return o;
}

json hunt_json(const HuntResult& r) {
    json o;
    o["bound"] = r.bound_name;
    o["spec"] = spec_json(r.spec);
    o["instances"] = r.instances;
    o["hypotheses_met"] = r.hypotheses_met;
    if (r.min_margin) o["min_margin"] = r.min_margin->str();
    json vs = json::array();
    for (const auto& v : r.violations) {
        json e;
        e["report"] = report_json(v.report);
        e["set_size"] = v.set_size;
        if (!v.set.empty()) e["set"] = v.set;
        if (v.class_index) e["class_index"] = v.class_index;
        if (!v.ordering.empty()) e["ordering"] = v.ordering;
        if (!v.detail.empty()) e["detail"] = v.detail;
        e["confirmed_naive"] = v.confirmed_naive;
        vs.push_back(std::move(e));
    }
    o["violations"] = std::move(vs);
    return o;
}

json regime_json(const RegimeSweepResult& r) {
    json o;
    o["k"] = r.k;
    o["exhaustive_universe"] = r.exhaustive_universe;
    o["sample_sizes"] = r.sample_sizes;
    o["samples_per_size"] = r.samples_per_size;
    o["sample_universe"] = r.sample_universe;
    o["seed"] = r.seed;
    o["instances"] = r.instances;
    o["thm"] = bound_tally_json(r.thm);
    o["coarse"] = bound_tally_json(r.coarse);
    o["class_parity"] = lemma_tally_json(r.parity);
    o["delta_floor_pp"] = lemma_tally_json(r.floor_pp);
    o["delta_floor_sp"] = lemma_tally_json(r.floor_sp);
    o["total_violations"] = r.total_violations();
    return o;
}

json margin_json(int64_t k, SetFamily family, const std::vector<MarginRow>& rows) {
    json o;
    o["k"] = k;
    o["family"] = family_name(family);
    json rs = json::array();
    for (const auto& row : rows) {
        json e;
        e["n"] = row.n;
        e["size"] = row.size;
        e["actual"] = row.actual;
        e["bound"] = row.bound.str();
        e["margin"] = row.margin.str();
        rs.push_back(std::move(e));
    }
    o["rows"] = std::move(rs);
    return o;
}

std::string margin_csv(const std::vector<MarginRow>& rows) {
    std::ostringstream out;
    out << "n,size,actual,bound,margin\n";
    for (const auto& row : rows)
        out << row.n << ',' << row.size << ',' << row.actual << ',' << row.bound.str() << ','
            << row.margin.str() << '\n';
    return out.str();
}

std::string family_name(SetFamily f) {
    switch (f) {
        case SetFamily::ap: return "ap";
        case SetFamily::two_ap: return "two_ap";
        case SetFamily::geometric: return "geometric";
    }
    fail(errc::internal, "unknown family");
}

SetFamily parse_family(const std::string& name) {
    if (name == "ap") return SetFamily::ap;
    if (name == "two_ap") return SetFamily::two_ap;
    if (name == "geometric") return SetFamily::geometric;
    fail(errc::parse, "unknown family '" + name + "' (ap, two_ap, geometric)");
}

std::string mode_name(SearchMode m) {
    switch (m) {
        case SearchMode::exhaustive: return "exhaustive";
        case SearchMode::random: return "random";
        case SearchMode::structured: return "structured";
    }
    fail(errc::internal, "unknown mode");
}

SearchMode parse_mode(const std::string& name) {
    if (name == "exhaustive") return SearchMode::exhaustive;
    if (name == "random") return SearchMode::random;
    if (name == "structured") return SearchMode::structured;
    fail(errc::parse, "unknown mode '" + name + "' (exhaustive, random, structured)");
}

std::string path_name(SumPath p) {
    switch (p) {
        case SumPath::automatic: return "auto";
        case SumPath::bits: return "bits";
        case SumPath::merge: return "merge";
        case SumPath::naive: return "naive";
    }
    fail(errc::internal, "unknown path");
}

SumPath parse_path(const std::string& name) {
    if (name == "auto") return SumPath::automatic;
    if (name == "bits") return SumPath::bits;
    if (name == "merge") return SumPath::merge;
    if (name == "naive") return SumPath::naive;
    fail(errc::parse, "unknown path '" + name + "' (auto, bits, merge, naive)");
}

} // namespace dilatekit::jsonio
