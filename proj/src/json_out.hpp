#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "bounds.hpp"
#include "intset.hpp"
#include "modset.hpp"
#include "report.hpp"
#include "residue.hpp"
#include "search.hpp"

// JSON builders shared by the C API and the CLI. Exact integers that can
// exceed 64 bits (bounds, margins, thresholds) are serialized as decimal
// strings; observed cardinalities are plain numbers.
namespace dilatekit::jsonio {

using json = nlohmann::ordered_json;

json set_json(const IntSet& a);

json report_json(const BoundReport& r);
json lemma_outcome_json(const LemmaOutcome& out);

json sweep_json(const SweepResult& r);

// Class listing; element arrays are included only when include_elements.
json decomposition_json(const ResidueDecomposition& d, bool include_elements);
// Per-class gain sizes for the decomposition of `source`, plus the total.
json deltas_json(const ResidueDecomposition& d, const IntSet& source, bool include_elements);

json search_json(const SearchResult& r);
json hunt_json(const HuntResult& r);
json regime_json(const RegimeSweepResult& r);

json margin_json(int64_t k, SetFamily family, const std::vector<MarginRow>& rows);
std::string margin_csv(const std::vector<MarginRow>& rows);

std::string family_name(SetFamily f);
SetFamily parse_family(const std::string& name);
std::string mode_name(SearchMode m);
SearchMode parse_mode(const std::string& name);
std::string path_name(SumPath p);
SumPath parse_path(const std::string& name);

} // namespace dilatekit::jsonio
