#ifndef SALAB_H
#define SALAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. The first four agree with the CLI exit codes.
 */
typedef enum {
  SALAB_STATUS_OK = 0,
  SALAB_STATUS_DOMAIN_ERROR = 1,
  SALAB_STATUS_PARSE_ERROR = 2,
  SALAB_STATUS_RESOURCE_CAP = 3,
  SALAB_STATUS_NULL_ARGUMENT = 4,
  SALAB_STATUS_INVALID_UTF8 = 5,
  SALAB_STATUS_PANIC = 6,
  /**
   * The caller's buffer is too short; the needed length was written.
   */
  SALAB_STATUS_BUFFER_TOO_SMALL = 7,
} SalabStatus;

/**
 * A parsed ideal file: ring plus generator list (zero lines kept).
 */
typedef struct SalabIdeal SalabIdeal;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or null. The pointer stays
 * valid until the next salab call on the same thread.
 */
const char *salab_last_error(void);

/**
 * Engine version as a static nul-terminated string.
 */
const char *salab_version(void);

/**
 * Parses an ideal file (`ring QQ[x, y]` header, one polynomial per line).
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` valid for writing a
 * pointer. On success `*out` owns a handle to release with
 * [`salab_ideal_free`].
 */
SalabStatus salab_ideal_parse(const char *text, SalabIdeal **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `ideal` must be null or a handle from [`salab_ideal_parse`] that has not
 * been freed.
 */
void salab_ideal_free(SalabIdeal *ideal);

/**
 * # Safety
 * `ideal` must be a live handle and `out` valid for writing.
 */
SalabStatus salab_ideal_num_vars(const SalabIdeal *ideal, size_t *out);

/**
 * Number of generator lines, zeros included.
 *
 * # Safety
 * `ideal` must be a live handle and `out` valid for writing.
 */
SalabStatus salab_ideal_num_generators(const SalabIdeal *ideal, size_t *out);

/**
 * `pd(S/I)`.
 *
 * # Safety
 * `ideal` must be a live handle and `out` valid for writing.
 */
SalabStatus salab_projective_dimension(const SalabIdeal *ideal, size_t *out);

/**
 * Krull dimension of `S/I`.
 *
 * # Safety
 * `ideal` must be a live handle and `out` valid for writing.
 */
SalabStatus salab_krull_dimension(const SalabIdeal *ideal, size_t *out);

/**
 * Whether the generator lines form a regular sequence.
 *
 * # Safety
 * `ideal` must be a live handle and `out` valid for writing.
 */
SalabStatus salab_is_regular_sequence(const SalabIdeal *ideal, bool *out);

/**
 * Writes `HF(S/I, 0..=m_max)` into `values`. `*needed` always receives
 * `m_max + 1`; a shorter buffer gives `BufferTooSmall`.
 *
 * # Safety
 * `ideal` must be a live handle, `values` valid for `len` writes, and
 * `needed` valid for writing.
 */
SalabStatus salab_hilbert_function(const SalabIdeal *ideal,
                                   uint64_t m_max,
                                   uint64_t *values,
                                   size_t len,
                                   size_t *needed);

/**
 * Writes the total Betti numbers `b_0, ..., b_pd` into `values`, with the
 * same buffer protocol as [`salab_hilbert_function`].
 *
 * # Safety
 * As for [`salab_hilbert_function`].
 */
SalabStatus salab_betti_totals(const SalabIdeal *ideal,
                               uint64_t *values,
                               size_t len,
                               size_t *needed);

/**
 * Runs an explorer command and returns its JSON report. `ideal_text` may
 * be null for commands without input files. Release `*json_out` with
 * [`salab_string_free`].
 *
 * # Safety
 * `command` must be a nul-terminated string, `ideal_text` null or
 * nul-terminated, and `json_out` valid for writing a pointer.
 */
SalabStatus salab_run_command(const char *command,
                              const char *ideal_text,
                              uint64_t seed,
                              char **json_out);

/**
 * Releases a string from [`salab_run_command`]. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void salab_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* SALAB_H */
