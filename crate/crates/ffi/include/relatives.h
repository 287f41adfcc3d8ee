#ifndef RELATIVES_H
#define RELATIVES_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of a fallible call.
 */
typedef enum RelStatus {
  REL_STATUS_OK = 0,
  REL_STATUS_NULL_POINTER = 1,
  REL_STATUS_INVALID_UTF8 = 2,
  REL_STATUS_PARSE = 3,
  REL_STATUS_VALIDATION = 4,
  REL_STATUS_DOMAIN = 5,
  REL_STATUS_CONSISTENCY = 6,
  REL_STATUS_JSON = 7,
  REL_STATUS_PANIC = 8,
} RelStatus;

/**
 * Verdict status as an integer.
 */
typedef enum RelVerdictStatus {
  REL_VERDICT_STATUS_RELATIVES = 0,
  REL_VERDICT_STATUS_NOT_RELATIVES = 1,
  REL_VERDICT_STATUS_UNKNOWN = 2,
} RelVerdictStatus;

/**
 * Opaque space form.
 */
typedef struct RelSpaceForm RelSpaceForm;

/**
 * Opaque verdict with its certificate.
 */
typedef struct RelVerdict RelVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *rel_last_error(void);

/**
 * Library version, static storage.
 */
const char *rel_version(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void rel_string_free(char *s);

/**
 * Parses `FS(n, b)`, `CE(N, s)`, `CP(N, s, b)` or `CH(N, s, b)`.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum RelStatus rel_space_form_parse(const char *text, struct RelSpaceForm **out);

/**
 * # Safety
 * `form` must come from [`rel_space_form_parse`] and not have been freed.
 */
void rel_space_form_free(struct RelSpaceForm *form);

/**
 * Canonical text of the form; release with [`rel_string_free`].
 *
 * # Safety
 * `form` must be a live handle or null.
 */
char *rel_space_form_render(const struct RelSpaceForm *form);

/**
 * Decides the pair. On success `*out` receives a verdict handle.
 *
 * # Safety
 * `f1` and `f2` must be live handles; `out` must be writable.
 */
enum RelStatus rel_decide(const struct RelSpaceForm *f1,
                          const struct RelSpaceForm *f2,
                          struct RelVerdict **out);

/**
 * # Safety
 * `v` must come from [`rel_decide`] and not have been freed.
 */
void rel_verdict_free(struct RelVerdict *v);

/**
 * # Safety
 * `v` must be a live handle.
 */
enum RelVerdictStatus rel_verdict_status(const struct RelVerdict *v);

/**
 * Rule identifier (`"R0"`, `"R0'"`, ..., `"none"`), static storage.
 *
 * # Safety
 * `v` must be a live handle or null.
 */
const char *rel_verdict_rule(const struct RelVerdict *v);

/**
 * Full verdict as JSON; release with [`rel_string_free`].
 *
 * # Safety
 * `v` must be a live handle or null.
 */
char *rel_verdict_to_json(const struct RelVerdict *v);

/**
 * Re-evaluates the verdict's certificate; writes 1 to `*ok` if every
 * recorded claim reproduces, else 0.
 *
 * # Safety
 * `v` must be a live handle; `ok` must be writable.
 */
enum RelStatus rel_verdict_recheck(const struct RelVerdict *v, int32_t *ok);

/**
 * Expansion of `(1 + b |z|^2)^r - 1` in `n` variables as JSON.
 *
 * # Safety
 * `b` must be a NUL-terminated rational literal; `out` must be writable.
 */
enum RelStatus rel_expand_json(uint32_t n, const char *b, uint32_t r, char **out);

/**
 * Runs the command-line interface on `argc` arguments (program name
 * excluded). Standard output and error go to `*out_stdout` and
 * `*out_stderr` (either may be null to discard). Returns the exit code.
 *
 * # Safety
 * `argv` must hold `argc` NUL-terminated strings.
 */
int32_t rel_cli_run(size_t argc, const char *const *argv, char **out_stdout, char **out_stderr);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RELATIVES_H */
