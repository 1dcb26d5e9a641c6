#ifndef CONCAVEX_H
#define CONCAVEX_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CxCase {
  CX_CASE_TRIVIAL_MAP = 0,
  CX_CASE_MAP_NEEDED = 1,
  CX_CASE_OUT_OF_SCOPE = 2,
} CxCase;

typedef enum CxPreset {
  CX_PRESET_ASPINWALL_MORRISON = 0,
  CX_PRESET_LOCAL_P2 = 1,
} CxPreset;

typedef enum CxStatus {
  CX_STATUS_OK = 0,
  CX_STATUS_INVALID_ARGUMENT = 1,
  CX_STATUS_HYPOTHESIS_VIOLATION = 2,
  CX_STATUS_WEIGHT_COLLISION = 3,
  CX_STATUS_ORACLE_FAILURE = 4,
  CX_STATUS_NULL_POINTER = 5,
  CX_STATUS_OUT_OF_RANGE = 6,
  CX_STATUS_INTERNAL = 7,
} CxStatus;

/**
 * Output of the mirror pipeline.
 */
typedef struct CxMirror CxMirror;

/**
 * A bundle `O(k_1)+...+O(-l_1)+...` on `P^s`.
 */
typedef struct CxSpec CxSpec;

/**
 * Rows `(d, value, descendant?)`.
 */
typedef struct CxTable CxTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer is
 * valid until the next `cx_*` call on the same thread.
 */
const char *cx_last_error(void);

/**
 * Library version as a static string.
 */
const char *cx_version(void);

/**
 * Release a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void cx_string_free(char *s);

/**
 * # Safety
 * `k` and `l` must point to `nk` and `nl` readable values (or be null when
 * the count is zero); `out` must be writable.
 */
enum CxStatus cx_spec_new(uint32_t s,
                          const uint32_t *k,
                          uintptr_t nk,
                          const uint32_t *l,
                          uintptr_t nl,
                          struct CxSpec **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum CxStatus cx_spec_preset(enum CxPreset preset, struct CxSpec **out);

/**
 * # Safety
 * `spec` must come from `cx_spec_new`/`cx_spec_preset` and not have been freed.
 */
void cx_spec_free(struct CxSpec *spec);

/**
 * # Safety
 * `spec` must be a live handle and `out` writable.
 */
enum CxStatus cx_spec_classify(const struct CxSpec *spec, enum CxCase *out);

/**
 * Mirror pipeline to order `order` in `q`.
 *
 * # Safety
 * `spec` must be a live handle and `out` writable.
 */
enum CxStatus cx_mirror_run(const struct CxSpec *spec, uint32_t order, struct CxMirror **out);

/**
 * # Safety
 * `m` must come from `cx_mirror_run` and not have been freed.
 */
void cx_mirror_free(struct CxMirror *m);

/**
 * Coefficient of `q^d` in the mirror map `I_1`, as a new string.
 *
 * # Safety
 * `m` must be a live handle and `out` writable.
 */
enum CxStatus cx_mirror_i1(const struct CxMirror *m, uint32_t d, char **out);

/**
 * Coefficient of `Q^d H^a hbar^e` in the reduced J-series, as a new string.
 *
 * # Safety
 * `m` must be a live handle and `out` writable.
 */
enum CxStatus cx_mirror_coefficient(const struct CxMirror *m,
                                    uint32_t d,
                                    uint32_t a,
                                    int64_t e,
                                    char **out);

/**
 * Invariant table for one of the two presets, degrees `1..=dmax`.
 *
 * # Safety
 * `out` must be writable.
 */
enum CxStatus cx_invariants(enum CxPreset preset, uint32_t dmax, struct CxTable **out);

/**
 * # Safety
 * `t` must come from `cx_invariants` and not have been freed.
 */
void cx_table_free(struct CxTable *t);

/**
 * Number of rows, or 0 for a null handle.
 *
 * # Safety
 * `t` must be null or a live handle.
 */
uintptr_t cx_table_len(const struct CxTable *t);

/**
 * Row `row`: its degree, value and (when present) descendant. `descendant`
 * receives null for tables without that column; it may itself be null if
 * the caller does not want it.
 *
 * # Safety
 * `t` must be a live handle; `degree` and `value` writable.
 */
enum CxStatus cx_table_row(const struct CxTable *t,
                           uintptr_t row,
                           uint32_t *degree,
                           char **value,
                           char **descendant);

/**
 * Runs the equivariant validation suite with `seeds` default weight
 * vectors; `passed` receives whether every check held on every vector.
 *
 * # Safety
 * `spec` must be a live handle and `passed` writable.
 */
enum CxStatus cx_oracle_run(const struct CxSpec *spec,
                            uint32_t order,
                            uint32_t zorder,
                            uint32_t seeds,
                            bool *passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CONCAVEX_H */
