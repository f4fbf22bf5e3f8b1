#ifndef HALLFORGE_H
#define HALLFORGE_H

/* Generated from the Rust sources; edit those instead. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Status of a call; numerically identical to the command-line exit codes.
typedef enum HfStatus {
  // Success.
  HF_STATUS_OK = 0,
  // A verification suite ran and at least one check failed.
  HF_STATUS_VERIFY_FAILED = 1,
  // Invalid input: bad JSON, unknown key, non-prime field size, null
  // pointer.
  HF_STATUS_INVALID = 2,
  // The request exceeds the enumeration budget.
  HF_STATUS_BUDGET = 3,
} HfStatus;

// Opaque session over one quiver, prime, and dimension bound.
typedef struct HfSession HfSession;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message describing the most recent failure on this thread. The pointer
// stays valid until the next failing call on the same thread.
//
// # Safety
// The returned pointer must not be freed or used after a later call from
// this thread fails.
const char *hf_last_error(void);

// Creates a session. `quiver_json` is the same document the command-line
// tool reads: `{"vertices": ["1", ...], "arrows": [["1","2"], ...]}`.
// On success writes a handle into `out` and returns `Ok`.
//
// # Safety
// `quiver_json` must be a valid NUL-terminated string and `out` a valid
// pointer; the handle must later be released with `hf_session_free`.
enum HfStatus hf_session_new(const char *quiver_json,
                             uint64_t prime,
                             uintptr_t max_dim,
                             struct HfSession **out);

// Releases a session handle. A null handle is a no-op.
//
// # Safety
// `session` must be a pointer returned by `hf_session_new` that has not
// been freed already.
void hf_session_free(struct HfSession *session);

// Writes the class table as a JSON array of
// `{"id", "dim", "mats"}` objects.
//
// # Safety
// `session` must be a live handle and `out` a valid pointer; the returned
// string must be released with `hf_string_free`.
enum HfStatus hf_classify(const struct HfSession *session, char **out);

// Multiplies two basis elements. `algebra` is `hall`, `ihall`, or `dh`;
// keys use the same expressions as the command line (`"S1"`, `"4"`,
// `"K(1,0)"`, `"S1@(0,1)"`). Writes the product element as JSON.
//
// # Safety
// All pointers must be valid; the returned string must be released with
// `hf_string_free`.
enum HfStatus hf_mul(const struct HfSession *session,
                     const char *algebra,
                     const char *left,
                     const char *right,
                     char **out);

// Runs a verification suite (`euler`, `rp`, `assoc`, `oracle`, `phi`,
// `serre`, `all`) and writes the structured report as JSON. Returns
// `VerifyFailed` if the report contains a failed check; the report is
// still written in that case.
//
// # Safety
// `session`, `suite`, and `out` must be valid; the returned string must be
// released with `hf_string_free`.
enum HfStatus hf_verify(const struct HfSession *session, const char *suite, char **out);

// Writes the derived-Hall structure-constant table as JSON.
//
// # Safety
// `session` and `out` must be valid; the returned string must be released
// with `hf_string_free`.
enum HfStatus hf_export_table(const struct HfSession *session, char **out);

// Releases a string returned by any `hf_` call. A null pointer is a
// no-op.
//
// # Safety
// `s` must have been returned by this library and not freed already.
void hf_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HALLFORGE_H */
