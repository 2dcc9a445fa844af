#ifndef RWEIS_H
#define RWEIS_H

/*
 * C interface to the rational-weight Eisenstein series library.
 *
 * Every call takes a context, returns a status code and, on success, leaves
 * its result as a JSON document readable through rweis_result_json(). On
 * failure rweis_last_error() holds a message. Strings returned by the library
 * stay valid until the next call on the same context. A context must not be
 * used from two threads at once; separate contexts are independent.
 *
 * Rational arguments are passed as "p/q" strings.
 */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define RWEIS_API __attribute__((visibility("default")))
#else
#define RWEIS_API
#endif

typedef struct rweis_context rweis_context;

typedef enum rweis_status {
  RWEIS_OK = 0,
  RWEIS_E_INVALID_ARGUMENT = 1, /* malformed input */
  RWEIS_E_DOMAIN = 2,           /* input outside the mathematical domain */
  RWEIS_E_NUMERICAL = 3,        /* internal consistency check failed */
  RWEIS_E_INTERNAL = 4          /* anything else, including allocation failure */
} rweis_status;

typedef enum rweis_verdict {
  RWEIS_VERDICT_PASS = 0,
  RWEIS_VERDICT_FAIL = 1,
  RWEIS_VERDICT_INFORMATIONAL = 2
} rweis_verdict;

RWEIS_API const char* rweis_version(void);

RWEIS_API rweis_context* rweis_context_create(void);
RWEIS_API void rweis_context_destroy(rweis_context* ctx);

/* 0 threads: RWEIS_THREADS if set, else all cores. */
RWEIS_API rweis_status rweis_set_threads(rweis_context* ctx, int threads);
/* Floating precision in bits, 24..64 (default 53). */
RWEIS_API rweis_status rweis_set_precision(rweis_context* ctx, unsigned bits);
/* Truncation bound of the sums over c (default 2000). */
RWEIS_API rweis_status rweis_set_c_max(rweis_context* ctx, int64_t c_max);
/* Whether verification reports carry wall-clock seconds (default 1). */
RWEIS_API rweis_status rweis_set_timing(rweis_context* ctx, int enabled);

RWEIS_API const char* rweis_last_error(const rweis_context* ctx);
RWEIS_API const char* rweis_result_json(const rweis_context* ctx);

/* s(h, k); naive != 0 sums the definition directly. {"h","k","value"} */
RWEIS_API rweis_status rweis_dedekind(rweis_context* ctx, const char* h, const char* k, int naive);

/* (a|n). {"a","n","value"} */
RWEIS_API rweis_status rweis_kronecker(rweis_context* ctx, int64_t a, int64_t n);

/* exponents: "n1:r1,n2:r2,..." over divisors of level. {"offset","coeffs"} */
RWEIS_API rweis_status rweis_eta_series(rweis_context* ctx, int64_t level, const char* exponents,
                                        int64_t terms);

/* Order at the cusp a/c. {"a","c","value"} */
RWEIS_API rweis_status rweis_order_at_cusp(rweis_context* ctx, int64_t level, const char* exponents,
                                           int64_t a, int64_t c);

/* Numeric value at tau = re + i im. {"re","im","err"} */
RWEIS_API rweis_status rweis_eta_eval(rweis_context* ctx, int64_t level, const char* exponents,
                                      double tau_re, double tau_im);

/* Multiplier of eta^{r1}(tau) eta^{rp}(p tau) on the canonical lift of
 * (a, b; c, d). formula: "general", "special" or "integer".
 * {"phase","re","im","formula",...} */
RWEIS_API rweis_status rweis_chi(rweis_context* ctx, int64_t p, const char* r1, const char* rp,
                                 int64_t a, int64_t b, int64_t c, int64_t d, const char* formula);

/* Coefficients 0..n_max at cusp "infty" or "one".
 * {"p","r1","rp","k","cusp","c_max","coefficients":[{"n","re","im","tail_bound","c_max"}]} */
RWEIS_API rweis_status rweis_eisenstein(rweis_context* ctx, int64_t p, const char* r1, const char* rp,
                                        const char* k, const char* cusp, int64_t n_max);

/* Gamma(k) from the series. k is "p/q" or a decimal; route "p2", "p3" or "auto".
 * {"k","route","n","value_re","value_im","tail_bound","extrapolated","c_max",...} */
RWEIS_API rweis_status rweis_gamma(rweis_context* ctx, const char* k, const char* route, int64_t n,
                                   int extrapolate);

/* Runs an identity check. identity: "thm71", "thm72", "carlitz", "classical",
 * "gamma-examples". params_json is an object with optional keys p, n1, n_inf,
 * k, r1, rp, n_max, c_max, tol (may be NULL). verdict receives an
 * rweis_verdict when not NULL. The result is the report JSON. */
RWEIS_API rweis_status rweis_verify(rweis_context* ctx, const char* identity, const char* params_json,
                                    int* verdict);

/* Searches exponents r1, rp with denominators up to max_den and |r| < bound
 * whose multiplier looks trivial on `samples` random Gamma0(p) matrices while
 * the three-condition criterion fails. Reports candidates only.
 * {"p","max_den","bound","samples","seed","candidates":[{"r1","rp"}]} */
RWEIS_API rweis_status rweis_probe_condition3(rweis_context* ctx, int64_t p, int64_t max_den, int64_t bound,
                                              int samples, uint64_t seed);

#ifdef __cplusplus
}
#endif

#endif /* RWEIS_H */
