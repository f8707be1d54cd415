#ifndef ORDREV_H
#define ORDREV_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum OrdrevStatus {
  ORDREV_STATUS_OK = 0,
  ORDREV_STATUS_NULL_POINTER = 1,
  ORDREV_STATUS_INVALID_UTF8 = 2,
  ORDREV_STATUS_PARSE_ERROR = 3,
  ORDREV_STATUS_INVALID_FAMILY = 4,
  ORDREV_STATUS_INVALID_WITNESS = 5,
  ORDREV_STATUS_WITNESS_REJECTED = 6,
  ORDREV_STATUS_INVARIANT_VIOLATION = 7,
  ORDREV_STATUS_PANIC = 8,
} OrdrevStatus;

/**
 * A parsed, normalized family.
 */
typedef struct OrdrevFamily OrdrevFamily;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses `text` in the family language into a new handle stored at `out`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum OrdrevStatus ordrev_family_parse(const char *text, struct OrdrevFamily **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `family` must come from [`ordrev_family_parse`] and not be freed twice.
 */
void ordrev_family_free(struct OrdrevFamily *family);

/**
 * Writes the verdict to `out`.
 *
 * # Safety
 * `family` must be a live handle and `out` a valid pointer.
 */
enum OrdrevStatus ordrev_is_reversible(const struct OrdrevFamily *family, bool *out);

/**
 * Builds the JSON report, verifying any witness to `depth` indices
 * (0 selects the default). The string at `out` is freed with
 * [`ordrev_string_free`]. A report that records invariant violations is
 * still written, with status `InvariantViolation`.
 *
 * # Safety
 * `family` must be a live handle and `out` a valid pointer.
 */
enum OrdrevStatus ordrev_decide_json(const struct OrdrevFamily *family, size_t depth, char **out);

/**
 * Checks a witness plan given as JSON against `family`. On success the
 * verification summary is written to `out` as JSON; a rejected plan yields
 * `WitnessRejected` and the reason in [`ordrev_last_error`].
 *
 * # Safety
 * `family` must be a live handle, `plan_json` a NUL-terminated string and
 * `out` a valid pointer.
 */
enum OrdrevStatus ordrev_verify_witness_json(const struct OrdrevFamily *family,
                                             const char *plan_json,
                                             size_t depth,
                                             char **out);

/**
 * Searches exhaustively for a witness within the bounds. `out` receives the
 * plan as JSON, or `null` when none exists.
 *
 * # Safety
 * `family` must be a live handle and `out` a valid pointer.
 */
enum OrdrevStatus ordrev_oracle_json(const struct OrdrevFamily *family,
                                     uint64_t max_target,
                                     uint64_t max_coeff,
                                     char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void ordrev_string_free(char *s);

/**
 * The message for the last failed call on this thread, or null. The pointer
 * stays valid until the next call into the library on the same thread.
 */
const char *ordrev_last_error(void);

/**
 * The library version as a static string.
 */
const char *ordrev_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ORDREV_H */
