#ifndef POLYLOG_H
#define POLYLOG_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. Negative values are errors.
 */
typedef enum PolylogStatus {
  POLYLOG_STATUS_OK = 0,
  /**
   * the check ran but produced no certificate
   */
  POLYLOG_STATUS_NOT_CERTIFIED = 1,
  POLYLOG_STATUS_NULL_POINTER = -1,
  POLYLOG_STATUS_INVALID_UTF8 = -2,
  POLYLOG_STATUS_SYNTAX = -3,
  POLYLOG_STATUS_PRECONDITION = -4,
  POLYLOG_STATUS_UNSUPPORTED = -5,
  POLYLOG_STATUS_UNCERTIFIED = -6,
  POLYLOG_STATUS_DATABASE = -7,
  POLYLOG_STATUS_IO = -8,
  POLYLOG_STATUS_ARITHMETIC = -9,
  POLYLOG_STATUS_PANIC = -10,
} PolylogStatus;

/**
 * A normalized combination in the Lie coalgebra.
 */
typedef struct PolylogElem PolylogElem;

/**
 * A field context together with its relation database.
 */
typedef struct PolylogSession PolylogSession;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread. The pointer stays valid
 * until the next call into the library on the same thread.
 */
const char *polylog_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void polylog_string_free(char *s);

/**
 * A session over Q(zeta_order), with the standard seed relations if
 * `seeded` is nonzero.
 *
 * # Safety
 * `out` must be valid for a write.
 */
enum PolylogStatus polylog_session_new(uint32_t order, int seeded, struct PolylogSession **out);

/**
 * Loads a database file; `replay` nonzero re-derives every record.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` valid for a write.
 */
enum PolylogStatus polylog_session_load(const char *path, int replay, struct PolylogSession **out);

/**
 * # Safety
 * `s` and `path` must be valid.
 */
enum PolylogStatus polylog_session_save(const struct PolylogSession *s, const char *path);

/**
 * Number of stored relations.
 *
 * # Safety
 * `s` must be a valid session or null (which gives 0).
 */
size_t polylog_session_len(const struct PolylogSession *s);

/**
 * # Safety
 * `s` must come from this library and not have been freed. Null is ignored.
 */
void polylog_session_free(struct PolylogSession *s);

/**
 * Parses and normalizes a symbol combination.
 *
 * # Safety
 * `s` and `expr` must be valid and `out` valid for a write.
 */
enum PolylogStatus polylog_elem_parse(const struct PolylogSession *s,
                                      const char *expr,
                                      struct PolylogElem **out);

/**
 * # Safety
 * `e` must come from this library and not have been freed. Null is ignored.
 */
void polylog_elem_free(struct PolylogElem *e);

/**
 * Weight of the combination, or -1 for null.
 *
 * # Safety
 * `e` must be a valid element or null.
 */
int polylog_elem_weight(const struct PolylogElem *e);

/**
 * 1 if the combination is zero, 0 if not, -1 for null.
 *
 * # Safety
 * `e` must be a valid element or null.
 */
int polylog_elem_is_zero(const struct PolylogElem *e);

/**
 * Canonical text of the combination.
 *
 * # Safety
 * `e` must be valid and `out` valid for a write.
 */
enum PolylogStatus polylog_elem_to_string(const struct PolylogElem *e, char **out);

/**
 * The cobracket as text; `truncated` nonzero drops the weight-one legs.
 *
 * # Safety
 * `s` and `e` must be valid and `out` valid for a write.
 */
enum PolylogStatus polylog_elem_cobracket(const struct PolylogSession *s,
                                          const struct PolylogElem *e,
                                          int truncated,
                                          char **out);

/**
 * The residue of e modulo the database, as a new element.
 *
 * # Safety
 * `s` and `e` must be valid and `out` valid for a write.
 */
enum PolylogStatus polylog_elem_reduce(const struct PolylogSession *s,
                                       const struct PolylogElem *e,
                                       struct PolylogElem **out);

/**
 * Ok if the cobracket of e vanishes modulo the database, NotCertified
 * otherwise.
 *
 * # Safety
 * `s` and `e` must be valid.
 */
enum PolylogStatus polylog_certify(const struct PolylogSession *s, const struct PolylogElem *e);

/**
 * The five-term relation for field elements a and b.
 *
 * # Safety
 * `a` and `b` must be NUL-terminated strings.
 */
enum PolylogStatus polylog_verify_five_term(const char *a, const char *b);

/**
 * Runs a command line as the `polylog` executable would, without the
 * program name. Writes the process exit code and the captured output.
 *
 * # Safety
 * `argv` must hold `argc` NUL-terminated strings; `exit_code` and
 * `output` must be valid for writes.
 */
enum PolylogStatus polylog_run(int argc, const char *const *argv, int *exit_code, char **output);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POLYLOG_H */
