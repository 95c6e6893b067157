#ifndef SUDOKU_SYMMETRY_H
#define SUDOKU_SYMMETRY_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum SsStatus {
  SS_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  SS_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  SS_STATUS_INVALID_UTF8 = 2,
  /**
   * Grid text or a symmetry expression could not be parsed.
   */
  SS_STATUS_PARSE = 3,
  /**
   * The grid breaks a row, column or box constraint, or is incomplete
   * where a complete grid is required.
   */
  SS_STATUS_INVALID_GRID = 4,
  /**
   * Operands have different box sizes.
   */
  SS_STATUS_BOX_MISMATCH = 5,
  /**
   * Any other rejected argument, such as an unsupported box size.
   */
  SS_STATUS_INVALID_ARGUMENT = 6,
  /**
   * The library panicked; this is a bug.
   */
  SS_STATUS_INTERNAL = 7,
} SsStatus;

/**
 * Opaque grid handle.
 */
typedef struct SsGrid SsGrid;

/**
 * Opaque symmetry handle.
 */
typedef struct SsSymmetry SsSymmetry;

typedef struct SsStabilizer {
  uint64_t stabilizer_size;
  uint64_t orbit_size;
  uint64_t group_order;
} SsStabilizer;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null if none.
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *ss_last_error_message(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string obtained from this library, freed once.
 */
void ss_string_free(char *s);

/**
 * Order of the geometric symmetry group for box size 2 or 3; 0 otherwise.
 */
uint64_t ss_group_order(uint32_t box_size);

/**
 * Parses a grid in line, block or JSON form. `box_size` 0 infers it from
 * the input.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum SsStatus ss_grid_parse(const char *text, uint32_t box_size, struct SsGrid **out);

/**
 * # Safety
 * `grid` must be null or a handle from this library, freed once.
 */
void ss_grid_free(struct SsGrid *grid);

/**
 * Box size of the grid (2 or 3), or 0 for a null handle.
 *
 * # Safety
 * `grid` must be null or a live handle.
 */
uint32_t ss_grid_box_size(const struct SsGrid *grid);

/**
 * Copies the cells in row-major order, 0 for empty, into `cells`, which
 * must hold `len >= side²` bytes.
 *
 * # Safety
 * `grid` must be a live handle and `cells` valid for `len` bytes.
 */
enum SsStatus ss_grid_cells(const struct SsGrid *grid, uint8_t *cells, size_t len);

/**
 * Renders the grid on one line, `.` for empty cells.
 *
 * # Safety
 * `grid` must be a live handle; `out` must be writable.
 */
enum SsStatus ss_grid_to_string(const struct SsGrid *grid, char **out);

/**
 * True when no row, column or box repeats a digit. False for null.
 *
 * # Safety
 * `grid` must be null or a live handle.
 */
bool ss_grid_is_valid(const struct SsGrid *grid);

/**
 * True when the grid is valid and has no empty cells. False for null.
 *
 * # Safety
 * `grid` must be null or a live handle.
 */
bool ss_grid_is_complete(const struct SsGrid *grid);

/**
 * Parses a symmetry expression such as `"V^2"` or `"r[213456789] d"`.
 *
 * # Safety
 * `expr` must be a nul-terminated string; `out` must be writable.
 */
enum SsStatus ss_symmetry_parse(const char *expr, uint32_t box_size, struct SsSymmetry **out);

/**
 * # Safety
 * `symmetry` must be null or a handle from this library, freed once.
 */
void ss_symmetry_free(struct SsSymmetry *symmetry);

/**
 * Renders the symmetry in expression syntax; the result parses back.
 *
 * # Safety
 * `symmetry` must be a live handle; `out` must be writable.
 */
enum SsStatus ss_symmetry_to_string(const struct SsSymmetry *symmetry, char **out);

/**
 * `out = left ∘ right`: `right` acts first.
 *
 * # Safety
 * `left` and `right` must be live handles; `out` must be writable.
 */
enum SsStatus ss_symmetry_compose(const struct SsSymmetry *left,
                                  const struct SsSymmetry *right,
                                  struct SsSymmetry **out);

/**
 * # Safety
 * `symmetry` must be a live handle; `out` must be writable.
 */
enum SsStatus ss_symmetry_inverse(const struct SsSymmetry *symmetry, struct SsSymmetry **out);

/**
 * Class index 1..=8 (A1..A8), or 0 for a null handle.
 *
 * # Safety
 * `symmetry` must be null or a live handle.
 */
uint8_t ss_symmetry_class(const struct SsSymmetry *symmetry);

/**
 * Position of the symmetry in the group's enumeration order.
 *
 * # Safety
 * `symmetry` must be a live handle; `out` must be writable.
 */
enum SsStatus ss_symmetry_rank(const struct SsSymmetry *symmetry, uint64_t *out);

/**
 * # Safety
 * Both arguments must be null or live handles.
 */
bool ss_symmetry_equal(const struct SsSymmetry *a, const struct SsSymmetry *b);

/**
 * Applies `symmetry` to `grid` into a new grid.
 *
 * # Safety
 * `grid` and `symmetry` must be live handles; `out` must be writable.
 */
enum SsStatus ss_grid_apply_symmetry(const struct SsGrid *grid,
                                     const struct SsSymmetry *symmetry,
                                     struct SsGrid **out);

/**
 * Canonical form of a valid grid. `out_symmetry` may be null; otherwise it
 * receives the symmetry that, followed by a relabeling, maps the input to
 * the canonical grid. `workers` 0 uses the available parallelism.
 *
 * # Safety
 * `grid` must be a live handle; `out_grid` must be writable.
 */
enum SsStatus ss_canonicalize(const struct SsGrid *grid,
                              bool geometry_only,
                              size_t workers,
                              struct SsGrid **out_grid,
                              struct SsSymmetry **out_symmetry);

/**
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum SsStatus ss_are_equivalent(const struct SsGrid *a,
                                const struct SsGrid *b,
                                bool geometry_only,
                                size_t workers,
                                bool *out);

/**
 * Stabilizer and orbit sizes of a complete grid.
 *
 * # Safety
 * `grid` must be a live handle; `out` must be writable.
 */
enum SsStatus ss_stabilizer(const struct SsGrid *grid, size_t workers, struct SsStabilizer *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SUDOKU_SYMMETRY_H */
