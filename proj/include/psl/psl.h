/* psl -- exact computations with one-dimensional sheaves on the projective
 * plane presented by matrices of forms.
 *
 * C API of the shared library. All functions are synchronous and
 * thread-compatible (no shared mutable state except the thread-local error
 * message). Inputs and outputs are JSON documents; returned strings are
 * heap-allocated and must be released with psl_string_free().
 */
#ifndef PSL_H
#define PSL_H

#include <stddef.h>

#if defined(_WIN32)
#define PSL_API __declspec(dllexport)
#else
#define PSL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as CLI exit codes. */
typedef enum psl_status {
  PSL_OK = 0,
  PSL_ERROR = 1,           /* bad input or violated precondition; see psl_last_error() */
  PSL_VIOLATIONS = 2,      /* a scan completed and found property violations */
  PSL_BUDGET_EXCEEDED = 3  /* enumeration budget or genericity retries exhausted */
} psl_status;

/* Opaque parsed morphism of direct sums of line bundles. */
typedef struct psl_morphism psl_morphism;

/* Parses {"field": "Q"|{"Fp": p}, "source": [..], "target": [..],
 * "entries": [[form, ..], ..]} with forms in the canonical term syntax
 * c*x0^i*x1^j*x2^k. */
PSL_API psl_status psl_morphism_parse(const char* json, psl_morphism** out);
PSL_API void psl_morphism_free(psl_morphism* m);
PSL_API psl_status psl_morphism_to_json(const psl_morphism* m, char** out_json);

/* Degree-homogeneity report for the matrix. */
PSL_API psl_status psl_validate(const psl_morphism* m, char** out_json);

/* Cohomology report {r, chi, table, monad, support_quartic, vanishing_ok}.
 * options_json (optional, may be NULL): {"verify_omega": true} additionally
 * recomputes the Omega^1(1) column through two independent routes (the full
 * Euler long exact sequence and the tensored resolution) and reports the
 * agreement. */
PSL_API psl_status psl_cohomology(const psl_morphism* m, const char* options_json,
                                  char** out_json);

/* Stratum classification against the M(4,chi) tables. */
PSL_API psl_status psl_classify(const psl_morphism* m, char** out_json);

/* Stability verdicts. options_json: {"mode": "exact"|"exhaustive"|"mc",
 * "polarization": ["a/b", ...] (lambdas then mus, optional),
 * "seed": n, "translates": n, "budget": n}. */
PSL_API psl_status psl_stability(const psl_morphism* m, const char* options_json,
                                 char** out_json);

/* Delta/tau equivariance suite. options_json: {"field": .., "trials": n,
 * "seed": n}. */
PSL_API psl_status psl_delta_check(const char* options_json, char** out_json);

/* Property scans; kind is "census", "vanishing" or "clifford".
 * config_json: {"field": .., "trials": n, "seed": n, "chi_list": [..],
 * "budget": n}. Returns PSL_VIOLATIONS when the report lists violations. */
PSL_API psl_status psl_scan(const char* kind, const char* config_json, char** out_json);

PSL_API void psl_string_free(char* s);

/* Message for the most recent failing call on this thread. */
PSL_API const char* psl_last_error(void);

PSL_API const char* psl_version(void);

#ifdef __cplusplus
}
#endif

#endif /* PSL_H */
