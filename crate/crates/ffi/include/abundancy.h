#ifndef ABUNDANCY_H
#define ABUNDANCY_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum AbStatus {
  AB_STATUS_OK = 0,
  AB_STATUS_NULL_POINTER = 1,
  AB_STATUS_INVALID_UTF8 = 2,
  AB_STATUS_PARSE = 3,
  AB_STATUS_DOMAIN = 4,
  AB_STATUS_NOT_PRIME = 5,
  AB_STATUS_NOT_COPRIME = 6,
  AB_STATUS_PREMISE = 7,
  AB_STATUS_RESOURCE_LIMIT = 8,
  AB_STATUS_CAP = 9,
  AB_STATUS_ZERO = 10,
  AB_STATUS_BUFFER_TOO_SMALL = 11,
  AB_STATUS_PANIC = 12,
} AbStatus;

typedef enum AbSandwich {
  AB_SANDWICH_HOLDS = 0,
  AB_SANDWICH_VIOLATED = 1,
  AB_SANDWICH_UNDECIDED = 2,
} AbSandwich;

typedef enum AbCheckStatus {
  AB_CHECK_STATUS_PASS = 0,
  AB_CHECK_STATUS_FAIL = 1,
  AB_CHECK_STATUS_UNDECIDED = 2,
} AbCheckStatus;

/**
 * Outcome of an enclosure comparison or a three-way check.
 */
typedef enum AbVerdict {
  AB_VERDICT_LESS = -1,
  AB_VERDICT_UNDECIDED = 0,
  AB_VERDICT_GREATER = 1,
} AbVerdict;

typedef enum AbResidualCase {
  /**
   * `q = 5`
   */
  AB_RESIDUAL_CASE_Q5 = 0,
  /**
   * `q = 5 (mod 12)`, `q != 5`
   */
  AB_RESIDUAL_CASE_FIVE_MOD12 = 1,
  /**
   * `q = 1 (mod 12)`
   */
  AB_RESIDUAL_CASE_ONE_MOD12 = 2,
} AbResidualCase;

/**
 * A candidate `q^k n^2`.
 */
typedef struct AbCandidate AbCandidate;

/**
 * A factored positive integer.
 */
typedef struct AbFactorization AbFactorization;

/**
 * The named checks produced by validating a candidate.
 */
typedef struct AbReport AbReport;

/**
 * Closed interval of doubles enclosing a real value, with the working precision
 * in bits that produced it.
 */
typedef struct AbBounds {
  double lo;
  double hi;
  uint32_t bits;
} AbBounds;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *ab_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *ab_version(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be NULL or a string returned by this library and not yet freed.
 */
void ab_string_free(char *s);

/**
 * Parses `3^2*5` or a bare decimal integer.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum AbStatus ab_factorization_parse(const char *text, struct AbFactorization **out);

/**
 * # Safety
 * `f` must be NULL or a handle from [`ab_factorization_parse`] not yet freed.
 */
void ab_factorization_free(struct AbFactorization *f);

/**
 * Canonical text form, e.g. `3^2*5`.
 *
 * # Safety
 * `f` must be a live handle and `out` a valid pointer.
 */
enum AbStatus ab_factorization_to_string(const struct AbFactorization *f, char **out);

/**
 * Decimal value of the factored integer.
 *
 * # Safety
 * `f` must be a live handle and `out` a valid pointer.
 */
enum AbStatus ab_factorization_value(const struct AbFactorization *f, char **out);

/**
 * `sigma(n)` in decimal.
 *
 * # Safety
 * `f` must be a live handle and `out` a valid pointer.
 */
enum AbStatus ab_sigma(const struct AbFactorization *f, char **out);

/**
 * `I(n)` as `num/den` in lowest terms.
 *
 * # Safety
 * `f` must be a live handle and `out` a valid pointer.
 */
enum AbStatus ab_abundancy_index(const struct AbFactorization *f, char **out);

/**
 * Whether `sigma(n) = 2n`.
 *
 * # Safety
 * `f` must be a live handle and `out` a valid pointer.
 */
enum AbStatus ab_is_perfect(const struct AbFactorization *f, bool *out);

/**
 * Enclosure of `x(n)`; `range_certified` reports whether `1 < x(n) < 2` was
 * certified.
 *
 * # Safety
 * `f` must be a live handle; `out` and `range_certified` valid pointers.
 */
enum AbStatus ab_exponent(const struct AbFactorization *f,
                          uint32_t initial_bits,
                          uint32_t max_bits,
                          struct AbBounds *out,
                          bool *range_certified);

/**
 * `min(x(a), x(b)) < x(ab) < max(x(a), x(b))` for coprime `a, b > 1`.
 *
 * # Safety
 * `a`, `b` must be live handles and `out` a valid pointer.
 */
enum AbStatus ab_sandwich(const struct AbFactorization *a,
                          const struct AbFactorization *b,
                          uint32_t initial_bits,
                          uint32_t max_bits,
                          enum AbSandwich *out);

/**
 * Parses `q=<int> k=<int> n=<factored>`.
 *
 * # Safety
 * `line` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum AbStatus ab_candidate_parse(const char *line, struct AbCandidate **out);

/**
 * # Safety
 * `c` must be NULL or a handle from [`ab_candidate_parse`] not yet freed.
 */
void ab_candidate_free(struct AbCandidate *c);

/**
 * Runs every named check on the candidate.
 *
 * # Safety
 * `c` must be a live handle and `out` a valid pointer.
 */
enum AbStatus ab_candidate_validate(const struct AbCandidate *c,
                                    uint32_t initial_bits,
                                    uint32_t max_bits,
                                    struct AbReport **out);

/**
 * # Safety
 * `r` must be NULL or a handle from [`ab_candidate_validate`] not yet freed.
 */
void ab_report_free(struct AbReport *r);

/**
 * Number of checks, or 0 for NULL.
 *
 * # Safety
 * `r` must be NULL or a live handle.
 */
size_t ab_report_len(const struct AbReport *r);

/**
 * Status of the check named `name`.
 *
 * # Safety
 * `r` must be a live handle, `name` a NUL-terminated string, `out` valid.
 */
enum AbStatus ab_report_status(const struct AbReport *r, const char *name, enum AbCheckStatus *out);

/**
 * The whole report as JSON.
 *
 * # Safety
 * `r` must be a live handle and `out` a valid pointer.
 */
enum AbStatus ab_report_to_json(const struct AbReport *r, char **out);

/**
 * `q^2 < 3 n^2`, i.e. `q < n sqrt 3`, for decimal `q` and `n`.
 *
 * # Safety
 * `q`, `n` must be NUL-terminated strings and `out` a valid pointer.
 */
enum AbStatus ab_acquaah_konyagin_holds(const char *q, const char *n, bool *out);

/**
 * Enclosure of `f(q, u)` and its relation to `1 + sqrt 3`.
 *
 * # Safety
 * `out` and `relation` must be valid pointers.
 */
enum AbStatus ab_theorem2_lower_bound(uint64_t q,
                                      uint64_t u,
                                      uint32_t initial_bits,
                                      uint32_t max_bits,
                                      struct AbBounds *out,
                                      enum AbVerdict *relation);

/**
 * Residue class of an Euler prime `q`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum AbStatus ab_classify(uint64_t q, enum AbResidualCase *out);

/**
 * Whether `2^p - 1` is prime.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum AbStatus ab_lucas_lehmer(uint64_t p, bool *out);

/**
 * Writes the exponents `p <= limit` with `2^p - 1` prime into `buf`. `len`
 * receives the count even when `cap` is too small, in which case the call
 * returns `BufferTooSmall` and writes nothing.
 *
 * # Safety
 * `buf` must hold `cap` values (or be NULL with `cap = 0`); `len` must be valid.
 */
enum AbStatus ab_mersenne_scan(uint64_t limit,
                               bool allow_beyond_cap,
                               uint64_t *buf,
                               size_t cap,
                               size_t *len);

/**
 * Full reproduction report as JSON. `clean` is set when no suite has failures
 * or undecided cases and every constant matches.
 *
 * # Safety
 * `out` and `clean` must be valid pointers.
 */
enum AbStatus ab_run_report(uint64_t seed,
                            uint32_t initial_bits,
                            uint32_t max_bits,
                            char **out,
                            bool *clean);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ABUNDANCY_H */
