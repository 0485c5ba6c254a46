/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#ifndef CSLAB_H
#define CSLAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes shared by every entry point.
 */
typedef enum CslabStatus {
  CslabStatus_Ok = 0,
  CslabStatus_NullPointer = 1,
  CslabStatus_InvalidUtf8 = 2,
  CslabStatus_ParseError = 3,
  CslabStatus_InvalidInput = 4,
  CslabStatus_GuardExceeded = 5,
  CslabStatus_TheoremViolation = 6,
  CslabStatus_Io = 7,
  CslabStatus_OutOfRange = 8,
  CslabStatus_Panic = 9,
} CslabStatus;

/**
 * A validated algebra.
 */
typedef struct CslabAlgebra CslabAlgebra;

/**
 * Simples, Ext¹ dimensions and radical of an algebra.
 */
typedef struct CslabQuiver CslabQuiver;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *cslab_last_error_message(void);

/**
 * Parses and validates an algebra document. Sub-document references are
 * resolved relative to the working directory.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum CslabStatus cslab_algebra_from_json(const char *json, struct CslabAlgebra **out);

/**
 * Loads and validates an algebra document from a file.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a valid pointer.
 */
enum CslabStatus cslab_algebra_load(const char *path, struct CslabAlgebra **out);

/**
 * Loads one of the bundled algebras by file name, e.g. `"u2_f2.json"`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum CslabStatus cslab_algebra_from_corpus(const char *name, struct CslabAlgebra **out);

/**
 * # Safety
 * `algebra` must be null or a handle from this library not yet freed.
 */
void cslab_algebra_free(struct CslabAlgebra *algebra);

/**
 * Dimension over GF(p); 0 for a null handle.
 *
 * # Safety
 * `algebra` must be null or a live handle.
 */
size_t cslab_algebra_dim(const struct CslabAlgebra *algebra);

/**
 * The prime `p`; 0 for a null handle.
 *
 * # Safety
 * `algebra` must be null or a live handle.
 */
uint32_t cslab_algebra_prime(const struct CslabAlgebra *algebra);

/**
 * Computes the simple modules, Ext¹ dimensions and Gabriel quiver.
 * `guard` bounds exhaustive enumerations; 0 uses `CSLAB_GUARD` or the default.
 *
 * # Safety
 * `algebra` must be a live handle and `out` a valid pointer.
 */
enum CslabStatus cslab_quiver_compute(const struct CslabAlgebra *algebra,
                                      uint64_t guard,
                                      struct CslabQuiver **out);

/**
 * # Safety
 * `quiver` must be null or a handle from this library not yet freed.
 */
void cslab_quiver_free(struct CslabQuiver *quiver);

/**
 * Number of simple modules; 0 for a null handle.
 *
 * # Safety
 * `quiver` must be null or a live handle.
 */
size_t cslab_quiver_vertex_count(const struct CslabQuiver *quiver);

/**
 * `dim Ext¹(S_i, S_j)` with 0-based vertex indices.
 *
 * # Safety
 * `quiver` must be a live handle and `out` a valid pointer.
 */
enum CslabStatus cslab_quiver_ext_dim(const struct CslabQuiver *quiver,
                                      size_t i,
                                      size_t j,
                                      size_t *out);

/**
 * True when every arrow is a loop; false for a null handle.
 *
 * # Safety
 * `quiver` must be null or a live handle.
 */
bool cslab_quiver_is_totally_disconnected(const struct CslabQuiver *quiver);

/**
 * Graphviz DOT text for the quiver.
 *
 * # Safety
 * `quiver` must be a live handle and `out` a valid pointer.
 */
enum CslabStatus cslab_quiver_to_dot(const struct CslabQuiver *quiver, char **out);

/**
 * JSON quiver report.
 *
 * # Safety
 * `quiver` must be a live handle and `out` a valid pointer.
 */
enum CslabStatus cslab_quiver_to_json(const struct CslabQuiver *quiver, char **out);

/**
 * Runs the converse-of-Schur check up to `max_length` and writes the JSON
 * report. `exit_code`, if not null, receives 0 (consistent), 2 (stopped at
 * a guard) or 1 (inconsistent).
 *
 * # Safety
 * `quiver` must be a live handle, `out` a valid pointer, `exit_code` null
 * or valid.
 */
enum CslabStatus cslab_csl_check_json(const struct CslabQuiver *quiver,
                                      size_t max_length,
                                      bool force_exhaustive,
                                      char **out,
                                      int32_t *exit_code);

/**
 * JSON report on the algebra as a product of matrix rings over local rings.
 *
 * # Safety
 * `quiver` must be a live handle and `out` a valid pointer.
 */
enum CslabStatus cslab_structure_json(const struct CslabQuiver *quiver, char **out);

/**
 * JSON report on monomorphisms of `GF(p)[t]/(t^n)`-modules with
 * `dim B ≤ max_dim`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum CslabStatus cslab_subcat_json(uint32_t p,
                                   size_t n,
                                   size_t max_dim,
                                   uint64_t guard,
                                   char **out);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void cslab_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CSLAB_H */
