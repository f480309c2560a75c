#ifndef K2NORM_H
#define K2NORM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes. The nonzero input codes match the exit codes of the
 * command-line tool.
 */
typedef enum K2Status {
  K2_STATUS_OK = 0,
  K2_STATUS_MALFORMED = 2,
  K2_STATUS_PRECONDITION = 3,
  K2_STATUS_INCONSISTENT = 4,
  K2_STATUS_NULL_POINTER = 20,
  K2_STATUS_INVALID_UTF8 = 21,
  K2_STATUS_PANIC = 99,
} K2Status;

typedef struct K2Extension K2Extension;

typedef struct K2Field K2Field;

typedef struct K2Symbols K2Symbols;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread, or null if there was
 * none. The pointer stays valid until the next failing call on the thread.
 */
const char *k2_last_error_message(void);

/**
 * Frees a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void k2_string_free(char *s);

/**
 * Parses a field record `{"name", "var", "min_poly"}`.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum K2Status k2_field_from_json(const char *json, struct K2Field **out_field);

/**
 * # Safety
 * `field` must come from this library and not have been freed.
 */
void k2_field_free(struct K2Field *field);

/**
 * # Safety
 * Pointers must be valid.
 */
enum K2Status k2_field_degree(const struct K2Field *field, size_t *out_degree);

/**
 * Number of real places r₁.
 *
 * # Safety
 * Pointers must be valid.
 */
enum K2Status k2_field_real_place_count(const struct K2Field *field, size_t *out_count);

/**
 * Sign (−1, 0 or 1) of an element at a real place. `element` is a JSON list
 * of rational strings or a comma-separated list of rationals.
 *
 * # Safety
 * Pointers must be valid; `element` nul-terminated.
 */
enum K2Status k2_field_sign_at_place(const struct K2Field *field,
                                     const char *element,
                                     size_t place,
                                     int8_t *out_sign);

/**
 * Parses an extension record `{"base", "var", "min_poly_over_base"}`.
 *
 * # Safety
 * `json` must be nul-terminated; `out_ext` writable.
 */
enum K2Status k2_extension_from_json(const char *json, struct K2Extension **out_ext);

/**
 * # Safety
 * `ext` must come from this library and not have been freed.
 */
void k2_extension_free(struct K2Extension *ext);

/**
 * New handle to the base field; free it separately.
 *
 * # Safety
 * Pointers must be valid.
 */
enum K2Status k2_extension_base(const struct K2Extension *ext, struct K2Field **out_field);

/**
 * Writes the indices of the ramified real places (no real place above)
 * into `buf`, up to `cap` of them, and their total number into `out_len`.
 * `buf` may be null when `cap` is 0.
 *
 * # Safety
 * `buf` must have room for `cap` entries.
 */
enum K2Status k2_extension_ramified_places(const struct K2Extension *ext,
                                           size_t *buf,
                                           size_t cap,
                                           size_t *out_len);

/**
 * Parses a list of `{"f", "g", "e"}` records over `field`.
 *
 * # Safety
 * Pointers must be valid; `json` nul-terminated.
 */
enum K2Status k2_symbols_from_json(const struct K2Field *field,
                                   const char *json,
                                   struct K2Symbols **out_symbols);

/**
 * # Safety
 * `symbols` must come from this library and not have been freed.
 */
void k2_symbols_free(struct K2Symbols *symbols);

/**
 * Whether the image of the symbol product in K₂ₙ(F) is a norm from L.
 *
 * # Safety
 * Pointers must be valid.
 */
enum K2Status k2_is_norm(const struct K2Extension *ext,
                         const struct K2Symbols *symbols,
                         uint32_t n,
                         bool *out_is_norm);

/**
 * The full verdict record as JSON; free with [`k2_string_free`].
 *
 * # Safety
 * Pointers must be valid.
 */
enum K2Status k2_verdict_json(const struct K2Extension *ext,
                              const struct K2Symbols *symbols,
                              uint32_t n,
                              char **out_json);

/**
 * Rank r of the obstruction group (ℤ/2)^r for K₂ₙ.
 *
 * # Safety
 * Pointers must be valid.
 */
enum K2Status k2_obstruction_rank(const struct K2Extension *ext, uint32_t n, size_t *out_rank);

/**
 * A symbol product that is not a norm, with nonzero parity exactly at the
 * ramified place `place`, as a JSON symbols record.
 *
 * # Safety
 * Pointers must be valid.
 */
enum K2Status k2_witness_json(const struct K2Extension *ext, size_t place, char **out_json);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* K2NORM_H */
