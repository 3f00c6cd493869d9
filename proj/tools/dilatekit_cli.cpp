// dilatekit command-line interface. All computation goes through the public
// C API in dilatekit.h; this translation unit owns only flag parsing, set
// file plumbing, and the exit-status contract:
//   0  success, no violations / check satisfied
//   1  violations found or check unsatisfied
//   2  usage or input errors
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dilatekit.h"

using json = nlohmann::ordered_json;

namespace {

int usage_error(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    return 2;
}

int lib_error(dk_status st) {
    std::cerr << "error: " << dk_last_error() << " [" << dk_status_name(st) << "]\n";
    return 2;
}

struct OwnedSet {
    dk_intset* p = nullptr;
    ~OwnedSet() { dk_set_free(p); }
    OwnedSet() = default;
    OwnedSet(const OwnedSet&) = delete;
    OwnedSet& operator=(const OwnedSet&) = delete;
};

struct OwnedStr {
    char* p = nullptr;
    ~OwnedStr() { dk_string_free(p); }
    OwnedStr() = default;
    OwnedStr(const OwnedStr&) = delete;
    OwnedStr& operator=(const OwnedStr&) = delete;
    std::string str() const { return p ? std::string(p) : std::string(); }
};

// Returns an exit code != 0 on failure, 0 on success.
int load_set(const std::string& path, OwnedSet& out) {
    size_t duplicates = 0;
    dk_status st = dk_set_from_file(path.c_str(), &out.p, &duplicates);
    if (st != DK_OK) return lib_error(st);
    if (duplicates)
        std::cerr << "note: " << duplicates << " duplicate value(s) in " << path << "\n";
    return 0;
}

int write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream f(out_path, std::ios::binary);
    f << text;
    if (!f) return usage_error("cannot write " + out_path);
    return 0;
}

int emit_json_line(const std::string& payload, const std::string& out_path) {
    return write_output(payload + "\n", out_path);
}

std::vector<int64_t> parse_int_list(const std::string& text) {
    std::vector<int64_t> v;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t comma = text.find(',', pos);
        std::string tok = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        v.push_back(std::stoll(tok));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (v.empty()) throw std::invalid_argument("empty list");
    return v;
}

// "a..b" (inclusive range) or a single "n".
std::pair<uint64_t, uint64_t> parse_size_range(const std::string& text) {
    size_t dots = text.find("..");
    if (dots == std::string::npos) {
        uint64_t n = std::stoull(text);
        return {n, n};
    }
    uint64_t lo = std::stoull(text.substr(0, dots));
    uint64_t hi = std::stoull(text.substr(dots + 2));
    if (hi < lo) throw std::invalid_argument("descending range");
    return {lo, hi};
}

uint64_t fresh_seed() {
    std::random_device rd;
    return (uint64_t{rd()} << 32) ^ rd();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dilatekit: dilated sumsets, residue decompositions, bound checks, and searches"};
    app.require_subcommand(1);
    app.fallthrough();

    int threads = -1; // -1: unset, fall back to DILATEKIT_THREADS, then auto
    uint64_t bit_window = 0;
    app.add_option("--threads", threads, "worker threads (0 = auto)");
    app.add_option("--bit-window", bit_window, "dense kernel window in bits");

    std::string set_path, set_b_path, out_path, form_text = "2,3", path_name = "auto";
    std::string format = "json", bound_name = "thm", family = "ap", moduli_text = "6,9,10";
    std::string k_list_text = "3", sizes_text;
    int64_t k = 3, m = 2, n_coef = 2, universe = 0, sample_universe = 8000;
    int64_t dilate_factor = 0, max_n = 10;
    uint64_t seed = 0, samples = 0, budget = 10'000'000;
    uint64_t from_n = 2, to_n = 2;
    size_t set_size = 0, witness_cap = 16;
    bool full_echo = false, with_elements = false, with_deltas = false;
    std::string mode = "exhaustive";
    std::string lemma_sizes_text = "50,200,500";
    uint64_t lemma_samples = 40;

    // --- sumset ---
    auto* c_sum = app.add_subcommand("sumset", "evaluate u1*A + u2*A (or A + B, or c*A)");
    c_sum->add_option("--set", set_path, "set file for A")->required();
    c_sum->add_option("--set-b", set_b_path, "set file for B (computes A + B)");
    c_sum->add_option("--form", form_text, "comma-separated coefficients (default 2,3)");
    c_sum->add_option("--dilate", dilate_factor, "compute factor*A instead of a form");
    c_sum->add_option("--path", path_name, "auto | bits | merge | naive");
    c_sum->add_option("--format", format, "text | json");
    c_sum->add_option("--out", out_path, "write output to a file");
    c_sum->add_flag("--full", full_echo, "echo elements regardless of size");

    // --- decompose ---
    auto* c_dec = app.add_subcommand("decompose", "residue classes of A modulo k");
    c_dec->add_option("--set", set_path)->required();
    c_dec->add_option("--k", k, "modulus")->required();
    c_dec->add_flag("--elements", with_elements, "include class elements");
    c_dec->add_flag("--deltas", with_deltas, "include per-class gain sizes");
    c_dec->add_option("--out", out_path);

    // --- verify ---
    auto* c_ver = app.add_subcommand("verify", "lemma sweeps and the theorem desk check");
    c_ver->require_subcommand(1);
    auto* v_chowla = c_ver->add_subcommand("chowla", "|A+B| >= min(n, |A|+|B|-1) exhaustively");
    v_chowla->add_option("--max-n", max_n, "largest modulus (default 10)");
    auto* v_l6 = c_ver->add_subcommand("l6", "stabilizer structure equivalence exhaustively");
    v_l6->add_option("--max-n", max_n, "largest modulus (default 10)");
    auto* v_l8 = c_ver->add_subcommand("l8", "mixed-unit bound over composite moduli");
    v_l8->add_option("--moduli", moduli_text, "comma list (default 6,9,10)");
    auto* v_graph = c_ver->add_subcommand("graph", "gain-sum floor over all subsets of [0,U)");
    v_graph->add_option("--k", k_list_text, "comma list of moduli (default 3)");
    v_graph->add_option("--universe", universe, "subsets of [0, universe)")->required();
    v_graph->add_option("--budget", budget, "enumeration cap");
    auto* v_lem = c_ver->add_subcommand("lemmas", "class-lemma + bound sweep (exhaustive + samples)");
    v_lem->add_option("--k", k)->required();
    v_lem->add_option("--universe", universe, "exhaustive universe (subsets of [0,U))")->required();
    v_lem->add_option("--sizes", lemma_sizes_text, "sample sizes, comma list");
    v_lem->add_option("--samples", lemma_samples, "samples per size");
    v_lem->add_option("--sample-universe", sample_universe, "universe for samples");
    auto* lem_seed = v_lem->add_option("--seed", seed, "sample seed");
    auto* v_thm = c_ver->add_subcommand("thm", "target bound on seeded random sets");
    v_thm->add_option("--k", k)->required();
    v_thm->add_option("--size", set_size, "set size")->required();
    v_thm->add_option("--size-max", to_n, "inclusive upper size (default --size)");
    v_thm->add_option("--samples", samples, "sets per size")->required();
    v_thm->add_option("--universe", universe, "sets drawn from [0, universe)")->required();
    auto* thm_seed = v_thm->add_option("--seed", seed);
    v_thm->add_option("--path", path_name);
    c_ver->add_option("--out", out_path);

    // --- check ---
    auto* c_chk = app.add_subcommand("check", "one bound on one instance");
    c_chk->add_option("--bound", bound_name,
                      "thm | coarse | pair | min_growth | full_residue | delta_sum");
    c_chk->add_option("--set", set_path)->required();
    c_chk->add_option("--set-b", set_b_path, "second set (pair bound only)");
    c_chk->add_option("--k", k, "main dilation factor / modulus");
    c_chk->add_option("--m", m, "companion dilation factor (default 2)");
    c_chk->add_option("--n", n_coef, "first coefficient for --set-b pair checks (default 2)");
    c_chk->add_option("--path", path_name);
    c_chk->add_option("--out", out_path);

    // --- report ---
    auto* c_rep = app.add_subcommand("report", "all applicable bounds, one JSON line each");
    c_rep->add_option("--set", set_path)->required();
    c_rep->add_option("--k", k)->required();
    c_rep->add_option("--m", m);
    c_rep->add_option("--path", path_name);
    c_rep->add_flag("--lemmas", with_deltas, "append class-lemma outcomes");
    c_rep->add_option("--out", out_path);

    // --- extremal ---
    auto* c_ext = app.add_subcommand("extremal", "minimize |m*A + k*A| over an instance space");
    c_ext->add_option("--k", k)->required();
    c_ext->add_option("--m", m);
    c_ext->add_option("--size", set_size, "set size")->required();
    c_ext->add_option("--size-max", to_n, "inclusive upper size (structured/random ranges)");
    c_ext->add_option("--universe", universe, "sets drawn from [0, universe)");
    c_ext->add_option("--mode", mode, "exhaustive | random | structured");
    c_ext->add_option("--samples", samples, "random mode: sets per size");
    auto* ext_seed = c_ext->add_option("--seed", seed);
    c_ext->add_option("--family", family, "structured mode: ap | two_ap | geometric");
    c_ext->add_option("--budget", budget, "exhaustive enumeration cap");
    c_ext->add_option("--witness-cap", witness_cap, "witnesses kept");
    c_ext->add_option("--path", path_name);
    c_ext->add_option("--out", out_path);

    // --- hunt ---
    auto* c_hunt = app.add_subcommand("hunt", "search an instance space for bound violations");
    c_hunt->add_option("--bound", bound_name, "registry bound name")->required();
    c_hunt->add_option("--k", k)->required();
    c_hunt->add_option("--m", m);
    c_hunt->add_option("--sizes", sizes_text, "size or inclusive range a..b");
    c_hunt->add_option("--universe", universe)->required();
    c_hunt->add_option("--mode", mode, "random (default) | exhaustive");
    c_hunt->add_option("--samples", samples, "random mode: sets per size");
    auto* hunt_seed = c_hunt->add_option("--seed", seed);
    c_hunt->add_option("--budget", budget);
    c_hunt->add_option("--path", path_name);
    c_hunt->add_option("--out", out_path);

    // --- margin ---
    auto* c_mar = app.add_subcommand("margin", "actual vs target bound along a family");
    c_mar->add_option("--k", k)->required();
    c_mar->add_option("--from", from_n, "first n")->required();
    c_mar->add_option("--to", to_n, "last n")->required();
    c_mar->add_option("--family", family, "ap | two_ap | geometric");
    c_mar->add_option("--format", format, "json | csv");
    c_mar->add_option("--path", path_name);
    c_mar->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (threads < 0) {
        const char* env = std::getenv("DILATEKIT_THREADS");
        threads = env ? std::atoi(env) : 0;
    }
    dk_set_threads(threads);
    if (bit_window) dk_set_bit_window(bit_window);
    const char* path_arg = path_name.c_str();

    try {
        if (*c_sum) {
            if (format != "text" && format != "json") return usage_error("format must be text or json");
            OwnedSet a;
            if (int rc = load_set(set_path, a)) return rc;
            OwnedSet result;
            dk_status st;
            if (!set_b_path.empty()) {
                OwnedSet b;
                if (int rc = load_set(set_b_path, b)) return rc;
                st = dk_minkowski_sum(a.p, b.p, &result.p);
            } else if (c_sum->count("--dilate")) {
                st = dk_dilate(a.p, dilate_factor, &result.p);
            } else {
                std::vector<int64_t> coeffs = parse_int_list(form_text);
                st = dk_evaluate_form(coeffs.data(), coeffs.size(), a.p, path_arg, &result.p);
            }
            if (st != DK_OK) return lib_error(st);
            size_t sz = dk_set_size(result.p);
            std::vector<int64_t> elems(sz);
            if (sz) {
                st = dk_set_elements(result.p, elems.data(), sz);
                if (st != DK_OK) return lib_error(st);
            }
            if (format == "text") {
                std::string body;
                for (int64_t v : elems) body += std::to_string(v) + "\n";
                std::cerr << "size " << sz << "\n";
                return write_output(body, out_path);
            }
            json o;
            o["size"] = sz;
            if (sz <= 1000 || full_echo) o["elements"] = elems;
            return emit_json_line(o.dump(), out_path);
        }

        if (*c_dec) {
            OwnedSet a;
            if (int rc = load_set(set_path, a)) return rc;
            OwnedStr s;
            dk_status st = dk_decompose_json(a.p, k, with_elements ? 1 : 0, with_deltas ? 1 : 0,
                                             &s.p);
            if (st != DK_OK) return lib_error(st);
            return emit_json_line(s.str(), out_path);
        }

        if (*c_ver) {
            OwnedStr s;
            dk_status st = DK_OK;
            bool violated = false;
            if (*v_chowla) {
                st = dk_verify_chowla_json(max_n, &s.p);
            } else if (*v_l6) {
                st = dk_verify_l6_json(max_n, &s.p);
            } else if (*v_l8) {
                std::vector<int64_t> moduli = parse_int_list(moduli_text);
                st = dk_verify_l8_json(moduli.data(), moduli.size(), &s.p);
            } else if (*v_graph) {
                json runs = json::array();
                for (int64_t kk : parse_int_list(k_list_text)) {
                    json spec{{"k", kk}, {"mode", "exhaustive"}, {"universe", universe},
                              {"budget", budget}};
                    OwnedStr one;
                    st = dk_hunt_json("delta_sum", spec.dump().c_str(), &one.p);
                    if (st != DK_OK) return lib_error(st);
                    json run = json::parse(one.str());
                    violated = violated || !run["violations"].empty();
                    runs.push_back(std::move(run));
                }
                json o{{"lemma", "delta_sum"}, {"runs", std::move(runs)}};
                if (int rc = emit_json_line(o.dump(), out_path)) return rc;
                return violated ? 1 : 0;
            } else if (*v_lem) {
                if (!*lem_seed) seed = fresh_seed();
                std::vector<int64_t> sizes = parse_int_list(lemma_sizes_text);
                json params{{"k", k},
                            {"exhaustive_universe", universe},
                            {"sample_sizes", sizes},
                            {"samples_per_size", lemma_samples},
                            {"sample_universe", sample_universe},
                            {"seed", seed}};
                st = dk_regime_json(params.dump().c_str(), &s.p);
                if (st != DK_OK) return lib_error(st);
                json o = json::parse(s.str());
                violated = o["total_violations"].get<uint64_t>() > 0;
                if (int rc = emit_json_line(s.str(), out_path)) return rc;
                return violated ? 1 : 0;
            } else if (*v_thm) {
                if (!*thm_seed) seed = fresh_seed();
                json spec{{"k", k},          {"mode", "random"},
                          {"set_size", set_size}, {"universe", universe},
                          {"samples", samples},   {"seed", seed},
                          {"path", path_name}};
                if (v_thm->count("--size-max")) spec["size_max"] = to_n;
                st = dk_hunt_json("thm", spec.dump().c_str(), &s.p);
            }
            if (st != DK_OK) return lib_error(st);
            json o = json::parse(s.str());
            violated = !o["violations"].empty();
            if (int rc = emit_json_line(s.str(), out_path)) return rc;
            return violated ? 1 : 0;
        }

        if (*c_chk) {
            OwnedSet a;
            if (int rc = load_set(set_path, a)) return rc;
            OwnedStr s;
            dk_status st;
            if (!set_b_path.empty()) {
                if (bound_name != "pair")
                    return usage_error("--set-b applies only to --bound pair");
                OwnedSet b;
                if (int rc = load_set(set_b_path, b)) return rc;
                st = dk_check_pair_json(n_coef, m, a.p, b.p, path_arg, &s.p);
            } else {
                st = dk_check_json(bound_name.c_str(), a.p, k, m, path_arg, &s.p);
            }
            if (st != DK_OK) return lib_error(st);
            json o = json::parse(s.str());
            if (int rc = emit_json_line(s.str(), out_path)) return rc;
            return o["satisfied"].get<bool>() ? 0 : 1;
        }

        if (*c_rep) {
            OwnedSet a;
            if (int rc = load_set(set_path, a)) return rc;
            OwnedStr s;
            dk_status st = dk_report_json(a.p, k, m, path_arg, &s.p);
            if (st != DK_OK) return lib_error(st);
            json arr = json::parse(s.str());
            bool violated = false;
            std::string body;
            for (const auto& rep : arr) {
                if (rep.contains("satisfied") && !rep["satisfied"].get<bool>()) violated = true;
                body += rep.dump() + "\n";
            }
            if (with_deltas) { // --lemmas
                OwnedStr lem;
                st = dk_lemmas_json(a.p, k, &lem.p);
                if (st != DK_OK) return lib_error(st);
                json lo = json::parse(lem.str());
                for (const auto& out : lo["outcomes"]) {
                    if (out["violation"].get<bool>()) violated = true;
                    body += out.dump() + "\n";
                }
            }
            if (int rc = write_output(body, out_path)) return rc;
            return violated ? 1 : 0;
        }

        if (*c_ext) {
            if (mode == "random" && !*ext_seed) seed = fresh_seed();
            json spec{{"k", k}, {"m", m}, {"mode", mode}, {"set_size", set_size}};
            if (c_ext->count("--size-max")) spec["size_max"] = to_n;
            if (c_ext->count("--universe")) spec["universe"] = universe;
            if (c_ext->count("--samples")) spec["samples"] = samples;
            if (mode == "random") spec["seed"] = seed;
            if (c_ext->count("--family")) spec["family"] = family;
            spec["budget"] = budget;
            spec["witness_cap"] = witness_cap;
            spec["path"] = path_name;
            OwnedStr s;
            dk_status st = dk_extremal_json(spec.dump().c_str(), &s.p);
            if (st != DK_OK) return lib_error(st);
            return emit_json_line(s.str(), out_path);
        }

        if (*c_hunt) {
            if (!c_hunt->count("--mode")) mode = "random";
            if (mode == "random" && !*hunt_seed) seed = fresh_seed();
            json spec{{"k", k}, {"m", m}, {"mode", mode}, {"budget", budget},
                      {"universe", universe}, {"path", path_name}};
            if (!sizes_text.empty()) {
                auto [lo, hi] = parse_size_range(sizes_text);
                spec["set_size"] = lo;
                spec["size_max"] = hi;
            }
            if (mode == "random") {
                spec["samples"] = samples ? samples : 1;
                spec["seed"] = seed;
            }
            OwnedStr s;
            dk_status st = dk_hunt_json(bound_name.c_str(), spec.dump().c_str(), &s.p);
            if (st != DK_OK) return lib_error(st);
            json o = json::parse(s.str());
            if (int rc = emit_json_line(s.str(), out_path)) return rc;
            return o["violations"].empty() ? 0 : 1;
        }

        if (*c_mar) {
            if (format != "json" && format != "csv") return usage_error("format must be json or csv");
            OwnedStr s;
            dk_status st = format == "csv"
                               ? dk_margin_csv(k, from_n, to_n, family.c_str(), path_arg, &s.p)
                               : dk_margin_json(k, from_n, to_n, family.c_str(), path_arg, &s.p);
            if (st != DK_OK) return lib_error(st);
            if (format == "csv") return write_output(s.str(), out_path);
            return emit_json_line(s.str(), out_path);
        }
    } catch (const std::exception& e) {
        return usage_error(e.what());
    }
    return usage_error("no subcommand executed");
}
