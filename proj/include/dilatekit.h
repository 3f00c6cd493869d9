/* dilatekit: integer sumset toolkit. Dilated sumsets m*A + k*A, residue-class
 * decomposition, lower-bound checks, and extremal/counterexample search.
 *
 * Conventions:
 *  - Every fallible call returns dk_status; DK_OK is 0. On failure,
 *    dk_last_error() returns a message for the current thread, valid until the
 *    next dilatekit call on that thread.
 *  - Sets are opaque handles released with dk_set_free.
 *  - Functions with a `char** out_json` parameter allocate a NUL-terminated
 *    string the caller releases with dk_string_free. Exact integers that can
 *    exceed 64 bits (bounds, margins, thresholds) appear as decimal strings
 *    in the JSON; observed cardinalities are plain numbers.
 */
#ifndef DILATEKIT_H
#define DILATEKIT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dk_status {
    DK_OK = 0,
    DK_EINVAL = 1,        /* invalid argument */
    DK_EOVERFLOW = 2,     /* int64 range exceeded */
    DK_EEMPTY = 3,        /* empty set where nonempty required */
    DK_EPRECONDITION = 4, /* lemma/check used outside its stated scope */
    DK_EMODULUS = 5,      /* mixed moduli in modular arithmetic */
    DK_EINDEX = 6,        /* index out of range */
    DK_EBUDGET = 7,       /* enumeration or pair budget exceeded */
    DK_EPARSE = 8,        /* malformed input text */
    DK_EIO = 9,           /* file I/O failure */
    DK_EUNKNOWN_BOUND = 10,
    DK_EINTERNAL = 11
} dk_status;

typedef struct dk_intset dk_intset;

const char* dk_version(void);
const char* dk_status_name(dk_status s);
/* Message for the last failure on this thread ("" if none). */
const char* dk_last_error(void);
void dk_string_free(char* s);

/* Worker threads for heavy kernels: n >= 1 fixes the count, 0 = auto. */
void dk_set_threads(int n);
/* Dense bit-kernel window in bits (minimum 64); larger ranges fall back to
 * merging. Default 1<<28. */
void dk_set_bit_window(uint64_t bits);

/* ---- sets ---------------------------------------------------------- */

/* Builds a set from values (sorted and deduplicated). n may be 0. */
dk_status dk_set_create(const int64_t* values, size_t n, dk_intset** out);
void dk_set_free(dk_intset* s);
size_t dk_set_size(const dk_intset* s);
/* Copies all elements in increasing order; cap must be >= dk_set_size(s). */
dk_status dk_set_elements(const dk_intset* s, int64_t* buf, size_t cap);

/* Reads a set file: one integer per line ('#' comments), or a JSON array if
 * the first non-space byte is '['. Duplicates are tolerated and counted. */
dk_status dk_set_from_file(const char* path, dk_intset** out, size_t* duplicates);
dk_status dk_set_write_file(const dk_intset* s, const char* path);

/* out = factor * s (elementwise). */
dk_status dk_dilate(const dk_intset* s, int64_t factor, dk_intset** out);
/* out = a + b = {x + y : x in a, y in b}. */
dk_status dk_minkowski_sum(const dk_intset* a, const dk_intset* b, dk_intset** out);

/* u0*A + u1*A + ... for nonzero coefficients. path selects the evaluation
 * strategy: "auto", "bits", "merge", or "naive"; NULL means "auto". */
dk_status dk_evaluate_form(const int64_t* coeffs, size_t arity, const dk_intset* a,
                           const char* path, dk_intset** out);
dk_status dk_evaluate_form_size(const int64_t* coeffs, size_t arity, const dk_intset* a,
                                const char* path, uint64_t* out_size);

/* Affine-normal form: out = (s - shift) / scale with min 0 and element gcd 1
 * (singletons normalize to {0} with scale 1). */
dk_status dk_normalize(const dk_intset* s, dk_intset** out, int64_t* shift, int64_t* scale);

/* ---- residue decomposition ----------------------------------------- */

/* Classes of s mod k ordered by size desc then residue asc, with
 * partial/full index lists; with_deltas adds per-class gain sizes. */
dk_status dk_decompose_json(const dk_intset* s, int64_t k, int with_elements, int with_deltas,
                            char** out_json);

/* ---- bound checks ---------------------------------------------------- */

/* One registered set-level bound on one instance. Names: thm, coarse, pair
 * (with b = a), min_growth, full_residue, delta_sum. m is the companion
 * dilation factor where the bound uses one (pair, min_growth). */
dk_status dk_check_json(const char* bound_name, const dk_intset* a, int64_t k, int64_t m,
                        const char* path, char** out_json);
/* |n*A + m*B| vs c_n(B)|A| + c_m(A)|B| - c_m(A)c_n(B) with distinct sets. */
dk_status dk_check_pair_json(int64_t n, int64_t m, const dk_intset* a, const dk_intset* b,
                             const char* path, char** out_json);
/* Every applicable set-level bound on one instance: JSON array of reports. */
dk_status dk_report_json(const dk_intset* a, int64_t k, int64_t m, const char* path,
                         char** out_json);
/* All class-level lemma outcomes (parity and gain floors, both prime
 * orderings where relevant) for one instance. */
dk_status dk_lemmas_json(const dk_intset* a, int64_t k, char** out_json);

/* ---- modular lemma sweeps ------------------------------------------- */

/* Exhaustive |A+B| >= min(n, |A|+|B|-1) over Z/nZ for n in [2, max_n]. */
dk_status dk_verify_chowla_json(int64_t max_n, char** out_json);
/* Exhaustive stabilizer soundness (A + a = A structure) for n in [2, max_n]. */
dk_status dk_verify_l6_json(int64_t max_n, char** out_json);
/* Mixed-unit bound sweep over the given composite moduli. */
dk_status dk_verify_l8_json(const int64_t* moduli, size_t count, char** out_json);

/* ---- search ---------------------------------------------------------- */

/* spec_json fields (all optional): k, m, set_size, size_max, universe, mode
 * ("exhaustive" | "random" | "structured"), samples, seed, family
 * ("ap" | "two_ap" | "geometric"), budget, witness_cap, path. */
dk_status dk_extremal_json(const char* spec_json, char** out_json);
/* Registry names: thm, coarse, pair, min_growth, full_residue, delta_sum,
 * class_parity, delta_floor_pp, delta_floor_sp. */
dk_status dk_hunt_json(const char* bound_name, const char* spec_json, char** out_json);
/* Comma-separated registry listing. */
dk_status dk_bound_names_json(char** out_json);

/* params_json fields: k, exhaustive_universe, sample_sizes (array),
 * samples_per_size, sample_universe, seed. */
dk_status dk_regime_json(const char* params_json, char** out_json);

/* Actual vs target bound along a structured family, n in [n_from, n_to]. */
dk_status dk_margin_json(int64_t k, uint64_t n_from, uint64_t n_to, const char* family,
                         const char* path, char** out_json);
dk_status dk_margin_csv(int64_t k, uint64_t n_from, uint64_t n_to, const char* family,
                        const char* path, char** out_csv);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* DILATEKIT_H */
