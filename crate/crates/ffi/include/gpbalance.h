#ifndef GPBALANCE_H
#define GPBALANCE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  GPB_STATUS_OK = 0,
  GPB_STATUS_NULL_POINTER = 1,
  GPB_STATUS_INVALID_PARAMS = 2,
  GPB_STATUS_OUT_OF_RANGE = 3,
  GPB_STATUS_OUT_OF_DOMAIN = 4,
  GPB_STATUS_NOT_COVERED = 5,
  GPB_STATUS_CONSISTENCY = 6,
  GPB_STATUS_SERIALIZATION = 7,
  GPB_STATUS_PANIC = 8,
} GpbStatus;

typedef enum {
  GPB_VERTEX_KIND_OUTER = 0,
  GPB_VERTEX_KIND_INNER = 1,
} GpbVertexKind;

/**
 * Opaque distance profile for one GP(n,k).
 */
typedef struct GpbProfile GpbProfile;

/**
 * Opaque per-ℓ verdict table for one GP(n,k).
 */
typedef struct GpbReport GpbReport;

typedef struct {
  GpbVertexKind kind;
  size_t index;
} GpbVertex;

typedef struct {
  size_t closer_to_x;
  size_t closer_to_y;
  size_t equidistant;
} GpbWCount;

/**
 * `present` is false when every pair at the distance is balanced.
 */
typedef struct {
  bool present;
  GpbVertex x;
  GpbVertex y;
  GpbWCount count;
} GpbWitness;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static nul-terminated string.
 */
const char *gpb_version(void);

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next library call on the same thread.
 */
const char *gpb_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, freed once.
 */
void gpb_string_free(char *s);

/**
 * Computes every per-ℓ verdict for GP(n,k).
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
GpbStatus gpb_report_new(size_t n, size_t k, GpbReport **out);

/**
 * # Safety
 * `report` must be null or a handle from [`gpb_report_new`], freed once.
 */
void gpb_report_free(GpbReport *report);

/**
 * # Safety
 * `report` must be a live handle and `out` writable.
 */
GpbStatus gpb_report_diameter(const GpbReport *report, uint32_t *out);

/**
 * # Safety
 * `report` must be a live handle and `out` writable.
 */
GpbStatus gpb_report_is_balanced(const GpbReport *report, uint32_t ell, bool *out);

/**
 * Lexicographically first unbalanced pair at distance `ell`.
 *
 * # Safety
 * `report` must be a live handle and `out` writable.
 */
GpbStatus gpb_report_witness(const GpbReport *report, uint32_t ell, GpbWitness *out);

/**
 * The report as JSON; free the string with [`gpb_string_free`].
 *
 * # Safety
 * `report` must be a live handle and `out` writable.
 */
GpbStatus gpb_report_to_json(const GpbReport *report, char **out);

/**
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
GpbStatus gpb_profile_new(size_t n, size_t k, GpbProfile **out);

/**
 * # Safety
 * `profile` must be null or a handle from [`gpb_profile_new`], freed once.
 */
void gpb_profile_free(GpbProfile *profile);

/**
 * # Safety
 * `profile` must be a live handle and `out` writable.
 */
GpbStatus gpb_profile_distance(const GpbProfile *profile, GpbVertex a, GpbVertex b, uint32_t *out);

/**
 * # Safety
 * `profile` must be a live handle and `out` writable.
 */
GpbStatus gpb_profile_w_count(const GpbProfile *profile, GpbVertex x, GpbVertex y, GpbWCount *out);

/**
 * # Safety
 * `profile` must be a live handle and `out` writable.
 */
GpbStatus gpb_profile_diameter(const GpbProfile *profile, uint32_t *out);

/**
 * Largest n in `[n_min, n_max]` with a balanced ℓ below the diameter;
 * `found` is false when there is none.
 *
 * # Safety
 * `found` and `out` must be writable.
 */
GpbStatus gpb_find_threshold(size_t k, size_t n_min, size_t n_max, bool *found, size_t *out);

/**
 * Runs the formula sweep for k = 3 or 4; writes the number of findings and,
 * if `json` is non-null, the full report as JSON.
 *
 * # Safety
 * `findings` must be writable; `json` must be null or writable.
 */
GpbStatus gpb_verify_formulas(size_t k, size_t n_max, size_t *findings, char **json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GPBALANCE_H */
