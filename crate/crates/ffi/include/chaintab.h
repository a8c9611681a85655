#ifndef CHAINTAB_H
#define CHAINTAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible function.
typedef enum ChtStatus {
  CHT_STATUS_OK = 0,
  // The query was well-formed and the answer is negative: no tableau of
  // the requested shape, or the input tableau is not valid.
  CHT_STATUS_NO_SOLUTION = 1,
  CHT_STATUS_NULL_POINTER = 2,
  CHT_STATUS_INVALID_INPUT = 3,
  CHT_STATUS_BUDGET_EXHAUSTED = 4,
  CHT_STATUS_INTERNAL = 5,
} ChtStatus;

// Opaque torsion profile.
typedef struct ChtProfile ChtProfile;

// Opaque tableau.
typedef struct ChtTableau ChtTableau;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message describing the last failure on this thread, or null. Owned by the
// library; valid until the next call on this thread.
const char *cht_last_error(void);

// Builds a profile from `m_2..m_g`; `len` must equal `genus - 1`.
//
// # Safety
// `torsion` must point to `len` readable values (may be null when `len` is 0).
enum ChtStatus cht_profile_new(size_t genus,
                               const uint32_t *torsion,
                               size_t len,
                               struct ChtProfile **out);

// # Safety
// `profile` must be null or a handle from this library not yet freed.
void cht_profile_free(struct ChtProfile *profile);

// Genus of the profile, or 0 for a null handle.
//
// # Safety
// `profile` must be null or a live handle.
size_t cht_profile_genus(const struct ChtProfile *profile);

// Builds a tableau from `rows * cols` row-major cells. Checks range and
// strict increase; torsion rules are checked by [`cht_validate`].
//
// # Safety
// `cells` must point to `rows * cols` readable values.
enum ChtStatus cht_tableau_new(size_t genus,
                               size_t rows,
                               size_t cols,
                               const uint32_t *cells,
                               struct ChtTableau **out);

// # Safety
// `tableau` must be null or a handle from this library not yet freed.
void cht_tableau_free(struct ChtTableau *tableau);

// # Safety
// `tableau` must be null or a live handle.
size_t cht_tableau_rows(const struct ChtTableau *tableau);

// # Safety
// `tableau` must be null or a live handle.
size_t cht_tableau_cols(const struct ChtTableau *tableau);

// # Safety
// `tableau` must be null or a live handle.
size_t cht_tableau_genus(const struct ChtTableau *tableau);

// Entry at 1-based `(x, y)`.
//
// # Safety
// `tableau` must be a live handle and `out` writable.
enum ChtStatus cht_tableau_get(const struct ChtTableau *tableau, size_t x, size_t y, uint32_t *out);

// Copies the row-major cells into `buf`, which must hold `rows * cols`.
//
// # Safety
// `buf` must point to `len` writable values.
enum ChtStatus cht_tableau_cells(const struct ChtTableau *tableau, uint32_t *buf, size_t len);

// Checks the tableau against the profile. Returns `Ok` when valid and
// `NoSolution` when some rule is violated.
//
// # Safety
// Handles must be live.
enum ChtStatus cht_validate(const struct ChtTableau *tableau, const struct ChtProfile *profile);

// Lexicographically smallest valid tableau of the shape. `node_cap` 0 means
// unlimited. Returns `NoSolution` (and a null `out`) when none exists.
//
// # Safety
// `profile` must be live and `out` writable.
enum ChtStatus cht_find_tableau(const struct ChtProfile *profile,
                                size_t rows,
                                size_t cols,
                                uint64_t node_cap,
                                struct ChtTableau **out);

// Number of valid tableaux of the shape. `node_cap` 0 means unlimited.
//
// # Safety
// `profile` must be live and `out` writable.
enum ChtStatus cht_count_tableaux(const struct ChtProfile *profile,
                                  size_t rows,
                                  size_t cols,
                                  uint64_t node_cap,
                                  uint64_t *out);

// Gonality. `witness` may be null; otherwise it receives a new handle.
//
// # Safety
// `profile` must be live and `out` writable.
enum ChtStatus cht_gonality(const struct ChtProfile *profile,
                            uint32_t *out,
                            struct ChtTableau **witness);

// Clifford index. When no class is in range, `out` receives the convention
// value `gon - 2` and `empty_set` is set to true.
//
// # Safety
// `profile` must be live; `out` and `empty_set` writable.
enum ChtStatus cht_clifford_index(const struct ChtProfile *profile, uint32_t *out, bool *empty_set);

// Reduces a valid tableau with at least two rows and columns to a
// two-column tableau. `trace` may be null; otherwise it receives the
// space-separated case labels, released with [`cht_string_free`].
//
// # Safety
// Handles must be live and `out` writable.
enum ChtStatus cht_reduce(const struct ChtTableau *tableau,
                          const struct ChtProfile *profile,
                          struct ChtTableau **out,
                          char **trace);

// Releases a string returned by this library.
//
// # Safety
// `s` must be null or a string from this library not yet freed.
void cht_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CHAINTAB_H */
