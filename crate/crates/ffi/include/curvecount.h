#ifndef CURVECOUNT_H
#define CURVECOUNT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CcStatus {
  CC_STATUS_OK = 0,
  CC_STATUS_NULL_POINTER = 1,
  CC_STATUS_INVALID_UTF8 = 2,
  CC_STATUS_INVALID_INPUT = 3,
  CC_STATUS_PARSE = 4,
  CC_STATUS_UNSUPPORTED = 5,
  CC_STATUS_INTERNAL = 6,
} CcStatus;

/**
 * Evaluation session for one degree. Holds the memo table.
 */
typedef struct CcSession CcSession;

/**
 * Creates a session for degree `d` and stores it in `*out`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one pointer.
 */
enum CcStatus cc_session_new(uint32_t d, struct CcSession **out);

/**
 * Releases a session. Null is ignored.
 *
 * # Safety
 * `session` must be null or a pointer from [`cc_session_new`] that has not
 * been freed yet.
 */
void cc_session_free(struct CcSession *session);

/**
 * Degree of the session, 0 for null.
 *
 * # Safety
 * `session` must be null or a live session pointer.
 */
uint32_t cc_session_degree(const struct CcSession *session);

/**
 * Evaluates an expression such as `"[T1 T1 T2] * y1^2 * yd^31"` and writes
 * the ordered count as a decimal string.
 *
 * # Safety
 * `session` must be a live session, `expr` a NUL-terminated string and
 * `out` a valid pointer to writable storage for one pointer.
 */
enum CcStatus cc_eval(struct CcSession *session, const char *expr, char **out);

/**
 * Like [`cc_eval`] but writes a JSON object with the ordered and unordered
 * values, the symmetry factor, the space and any warnings.
 *
 * # Safety
 * Same as [`cc_eval`].
 */
enum CcStatus cc_eval_json(struct CcSession *session, const char *expr, char **out);

/**
 * Severi-type invariant `N^{d,delta}(alpha, beta)` written as a decimal string.
 *
 * # Safety
 * `alpha` must point to `alpha_len` readable `u32` values (may be null when
 * the length is 0), likewise `beta`; `out` must be a valid pointer.
 */
enum CcStatus cc_ch_invariant(uint32_t d,
                              uint32_t delta,
                              const uint32_t *alpha,
                              uintptr_t alpha_len,
                              const uint32_t *beta,
                              uintptr_t beta_len,
                              char **out);

/**
 * Rational degree `d` curves through `3d - 1` points.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one pointer.
 */
enum CcStatus cc_kontsevich_nd(uint32_t d, char **out);

/**
 * Rational degree `d` curves through `3d - 2` points tangent to a line.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one pointer.
 */
enum CcStatus cc_wdvv_nd_t1(uint32_t d, char **out);

/**
 * Frees a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void cc_string_free(char *s);

/**
 * Static description of a status code.
 */
const char *cc_status_message(enum CcStatus status);

/**
 * Message of the last failure on this thread, empty after a success.
 * The pointer stays valid until the next call into this library on the
 * same thread.
 */
const char *cc_last_error(void);

#endif /* CURVECOUNT_H */
