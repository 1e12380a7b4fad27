/* C interface to the arrkpi exact-combinatorics library.
* All strings returned through `char **` out-parameters are owned
* by the caller and must be released with arrkpi_string_free. */

#ifndef ARRKPI_H
#define ARRKPI_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Families of reflection arrangements constructible via
 * [`arrkpi_arrangement_reflection`].
 */
typedef enum ArrkpiFamily {
  /**
   * Braid-style arrangement `{xi = 0} ∪ {xi = xj}`.
   */
  ARRKPI_FAMILY_SKEWED_A = 0,
  /**
   * Full signed arrangement `{xi = 0} ∪ {xi = ±xj}`.
   */
  ARRKPI_FAMILY_B = 1,
  /**
   * Difference-sum arrangement `{xi = ±xj}`.
   */
  ARRKPI_FAMILY_D = 2,
} ArrkpiFamily;

/**
 * Result of every fallible call in this interface.
 */
typedef enum ArrkpiStatus {
  /**
   * The call succeeded and all out-parameters are set.
   */
  ARRKPI_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  ARRKPI_STATUS_NULL_ARGUMENT = 1,
  /**
   * An argument was out of range, malformed, or not UTF-8.
   */
  ARRKPI_STATUS_INVALID_ARGUMENT = 2,
  /**
   * A verification ran to completion and found violations; the report
   * out-parameter is still written.
   */
  ARRKPI_STATUS_VIOLATIONS_FOUND = 3,
  /**
   * An internal invariant failed; report this as a bug.
   */
  ARRKPI_STATUS_INTERNAL = 4,
} ArrkpiStatus;

/**
 * Opaque handle to an exact hyperplane arrangement.
 */
typedef struct ArrkpiArrangement ArrkpiArrangement;

/**
 * Opaque handle to the fan decomposition of an arrangement.
 */
typedef struct ArrkpiFanComplex ArrkpiFanComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread, or an empty
 * string if none occurred. The pointer stays valid until the next failing
 * arrkpi call on the same thread; never free it.
 */
const char *arrkpi_last_error_message(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be null (a no-op) or a pointer previously returned through a
 * `char **` out-parameter of this library, not yet freed.
 */
void arrkpi_string_free(char *s);

/**
 * Parses an arrangement from its JSON form
 * `{"dim": …, "hyperplanes": [[normal…, offset]…], "region": [[lo, hi]…]}`
 * and writes a new handle to `out`.
 *
 * # Safety
 * `json` must point to a NUL-terminated string and `out` to writable
 * storage for one pointer; both must stay valid for the duration of the
 * call.
 */
enum ArrkpiStatus arrkpi_arrangement_from_json(const char *json, struct ArrkpiArrangement **out);

/**
 * Builds the rank-`n` reflection arrangement of the given family and
 * writes a new handle to `out`.
 *
 * # Safety
 * `out` must point to writable storage for one pointer.
 */
enum ArrkpiStatus arrkpi_arrangement_reflection(enum ArrkpiFamily family,
                                                uintptr_t n,
                                                struct ArrkpiArrangement **out);

/**
 * Builds the level-`k` coordinate-and-differences arrangement in rank `n`
 * and writes a new handle to `out`.
 *
 * # Safety
 * `out` must point to writable storage for one pointer.
 */
enum ArrkpiStatus arrkpi_arrangement_family_h(int64_t k,
                                              uintptr_t n,
                                              struct ArrkpiArrangement **out);

/**
 * Builds the modular sums-and-differences arrangement of level `k` in rank
 * `n`, restricted to the box `(-half_width, half_width)^n`, and writes a
 * new handle to `out`.
 *
 * # Safety
 * `out` must point to writable storage for one pointer.
 */
enum ArrkpiStatus arrkpi_arrangement_family_k(int64_t k,
                                              uintptr_t n,
                                              int64_t half_width,
                                              struct ArrkpiArrangement **out);

/**
 * Writes the ambient dimension of the arrangement to `out`.
 *
 * # Safety
 * `arr` must be a live handle from this library; `out` must point to
 * writable storage for one `uintptr_t`.
 */
enum ArrkpiStatus arrkpi_arrangement_dim(const struct ArrkpiArrangement *arr, uintptr_t *out);

/**
 * Writes the number of hyperplanes of the arrangement to `out`.
 *
 * # Safety
 * `arr` must be a live handle from this library; `out` must point to
 * writable storage for one `uintptr_t`.
 */
enum ArrkpiStatus arrkpi_arrangement_hyperplane_count(const struct ArrkpiArrangement *arr,
                                                      uintptr_t *out);

/**
 * Serializes the arrangement back to its JSON form; the caller owns the
 * returned string.
 *
 * # Safety
 * `arr` must be a live handle from this library; `out` must point to
 * writable storage for one pointer.
 */
enum ArrkpiStatus arrkpi_arrangement_to_json(const struct ArrkpiArrangement *arr, char **out);

/**
 * Releases an arrangement handle.
 *
 * # Safety
 * `arr` must be null (a no-op) or a live handle from this library, not
 * yet freed; no other pointer to it may be used afterwards.
 */
void arrkpi_arrangement_free(struct ArrkpiArrangement *arr);

/**
 * Enumerates the fan decomposition of the arrangement and writes a new
 * handle to `out`. The complex is self-contained; the arrangement handle
 * may be freed afterwards.
 *
 * # Safety
 * `arr` must be a live handle from this library; `out` must point to
 * writable storage for one pointer.
 */
enum ArrkpiStatus arrkpi_fan_complex_new(const struct ArrkpiArrangement *arr,
                                         struct ArrkpiFanComplex **out);

/**
 * Writes the total number of fans and the number of chambers.
 *
 * # Safety
 * `fc` must be a live handle from this library; `fans` and `chambers`
 * must point to writable storage for one `uintptr_t` each.
 */
enum ArrkpiStatus arrkpi_fan_complex_counts(const struct ArrkpiFanComplex *fc,
                                            uintptr_t *fans,
                                            uintptr_t *chambers);

/**
 * Writes the id of the chamber of the face `fan` closest to `chamber` in
 * wall-crossing distance (its gate). Fan ids index the enumeration order;
 * chamber ids are the fan ids of top-dimensional fans.
 *
 * # Safety
 * `fc` must be a live handle from this library; `out` must point to
 * writable storage for one `uintptr_t`.
 */
enum ArrkpiStatus arrkpi_fan_complex_gate(const struct ArrkpiFanComplex *fc,
                                          uintptr_t chamber,
                                          uintptr_t fan,
                                          uintptr_t *out);

/**
 * Writes the number of hyperplanes strictly separating two chambers.
 *
 * # Safety
 * `fc` must be a live handle from this library; `out` must point to
 * writable storage for one `uintptr_t`.
 */
enum ArrkpiStatus arrkpi_fan_complex_separation(const struct ArrkpiFanComplex *fc,
                                                uintptr_t chamber_a,
                                                uintptr_t chamber_b,
                                                uintptr_t *out);

/**
 * Releases a fan complex handle.
 *
 * # Safety
 * `fc` must be null (a no-op) or a live handle from this library, not
 * yet freed; no other pointer to it may be used afterwards.
 */
void arrkpi_fan_complex_free(struct ArrkpiFanComplex *fc);

/**
 * Writes the per-dimension cell counts of the dual cell complex of the
 * arrangement into `buf` (index = dimension) and the number of entries to
 * `written`. Requires `cap >= dim + 1`.
 *
 * # Safety
 * `arr` must be a live handle from this library; `buf` must point to at
 * least `cap` writable `uintptr_t`s; `written` to one.
 */
enum ArrkpiStatus arrkpi_salvetti_cell_counts(const struct ArrkpiArrangement *arr,
                                              uintptr_t *buf,
                                              uintptr_t cap,
                                              uintptr_t *written);

/**
 * Writes the Euler characteristic of the dual cell complex of the
 * arrangement to `out`.
 *
 * # Safety
 * `arr` must be a live handle from this library; `out` must point to
 * writable storage for one `int64_t`.
 */
enum ArrkpiStatus arrkpi_salvetti_euler(const struct ArrkpiArrangement *arr, int64_t *out);

/**
 * Classifies every vertex of the arrangement and writes the JSON report to
 * `out_report` (caller-owned). Returns `ARRKPI_STATUS_VIOLATIONS_FOUND`,
 * with the report still written, when some vertex is not admissible.
 *
 * # Safety
 * `arr` must be a live handle from this library; `out_report` must point
 * to writable storage for one pointer.
 */
enum ArrkpiStatus arrkpi_verify_admissible(const struct ArrkpiArrangement *arr, char **out_report);

/**
 * Runs the full audit suite on the radius-`radius` ball of the rank-`n`
 * braid-like group and writes the JSON report to `out_report`
 * (caller-owned). Returns `ARRKPI_STATUS_VIOLATIONS_FOUND`, with the
 * report still written, when any audit finds a counterexample.
 *
 * # Safety
 * `out_report` must point to writable storage for one pointer.
 */
enum ArrkpiStatus arrkpi_verify_ball_suite(uintptr_t n,
                                           int64_t radius,
                                           int64_t margin,
                                           char **out_report);

/**
 * Computes the left-greedy canonical form of a word in the braid-like
 * group of the given diagram (`"A2"`, `"B3"`, `"D3"`, …). Letters are
 * `±1 ..= ±rank`: positive for a generator, negative for its inverse. The
 * canonical form is written to `out` (caller-owned) in the textual form
 * `D^k(…)(…)`: the power of the Garside element followed by one
 * parenthesized reduced word per factor, `e` for the identity.
 *
 * # Safety
 * `diagram` must point to a NUL-terminated string; `letters` must point to
 * `len` readable `int32_t`s (it may be null only when `len` is 0); `out`
 * must point to writable storage for one pointer.
 */
enum ArrkpiStatus arrkpi_braid_normal_form(const char *diagram,
                                           const int32_t *letters,
                                           uintptr_t len,
                                           char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ARRKPI_H */
