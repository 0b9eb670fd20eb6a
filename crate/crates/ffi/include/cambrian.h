#ifndef CAMBRIAN_H
#define CAMBRIAN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CambrianStatus {
  CAMBRIAN_STATUS_OK = 0,
  CAMBRIAN_STATUS_NULL_POINTER = 1,
  CAMBRIAN_STATUS_INVALID_UTF8 = 2,
  CAMBRIAN_STATUS_PARSE_ERROR = 3,
  CAMBRIAN_STATUS_INVALID_ARGUMENT = 4,
  CAMBRIAN_STATUS_NOT_IN_POSET = 5,
  CAMBRIAN_STATUS_CAP_REQUIRED = 6,
  CAMBRIAN_STATUS_INTERNAL = 7,
} CambrianStatus;

/**
 * A Cambrian poset truncated at a length cap.
 */
typedef struct CambrianLattice CambrianLattice;

/**
 * A Coxeter system.
 */
typedef struct CambrianSystem CambrianSystem;

/**
 * Homotopy type of an open interval.
 */
typedef struct CambrianHomotopy {
  bool contractible;
  /**
   * Sphere dimension; meaningful only when `contractible` is false.
   */
  int64_t sphere_dimension;
} CambrianHomotopy;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after success.
 * Valid until the next call into the library on the same thread.
 */
const char *cambrian_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, freed once.
 */
void cambrian_string_free(char *s);

/**
 * Parses a TOML system description (`generators`, `matrix`).
 *
 * # Safety
 * `toml` must be a NUL-terminated string; `out` must be writable.
 */
enum CambrianStatus cambrian_system_from_toml(const char *toml, struct CambrianSystem **out);

/**
 * A built-in type such as `A3`, `B3`, `H3` or `A~2`.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` must be writable.
 */
enum CambrianStatus cambrian_system_from_type(const char *name, struct CambrianSystem **out);

/**
 * # Safety
 * `sys` must be null or a handle from this library, freed once.
 */
void cambrian_system_free(struct CambrianSystem *sys);

/**
 * Number of generators, or 0 for a null handle.
 *
 * # Safety
 * `sys` must be null or a live handle.
 */
size_t cambrian_system_rank(const struct CambrianSystem *sys);

/**
 * Sorting word of `word` (generator names separated by commas or spaces)
 * with `|` block dividers. A null `gamma` means the generators in order.
 *
 * # Safety
 * String arguments must be NUL-terminated; `out` must be writable.
 */
enum CambrianStatus cambrian_sorting_word(const struct CambrianSystem *sys,
                                          const char *gamma,
                                          const char *word,
                                          char **out);

/**
 * # Safety
 * String arguments must be NUL-terminated; `out` must be writable.
 */
enum CambrianStatus cambrian_is_sortable(const struct CambrianSystem *sys,
                                         const char *gamma,
                                         const char *word,
                                         bool *out);

/**
 * Builds the poset of sortable elements of length at most `cap`. A
 * negative `cap` means the length of the longest element (finite groups
 * only).
 *
 * # Safety
 * `gamma` must be null or NUL-terminated; `out` must be writable.
 */
enum CambrianStatus cambrian_lattice_build(const struct CambrianSystem *sys,
                                           const char *gamma,
                                           int64_t cap,
                                           struct CambrianLattice **out);

/**
 * # Safety
 * `lattice` must be null or a handle from this library, freed once.
 */
void cambrian_lattice_free(struct CambrianLattice *lattice);

/**
 * # Safety
 * `lattice` must be a live handle; `out` must be writable.
 */
enum CambrianStatus cambrian_lattice_size(const struct CambrianLattice *lattice, size_t *out);

/**
 * Number of Hasse edges.
 *
 * # Safety
 * `lattice` must be a live handle; `out` must be writable.
 */
enum CambrianStatus cambrian_lattice_cover_count(const struct CambrianLattice *lattice,
                                                 size_t *out);

/**
 * Möbius value `μ(lower, upper)`; an empty string names the identity.
 *
 * # Safety
 * String arguments must be NUL-terminated; `out` must be writable.
 */
enum CambrianStatus cambrian_interval_mobius(const struct CambrianLattice *lattice,
                                             const char *lower,
                                             const char *upper,
                                             int64_t *out);

/**
 * # Safety
 * String arguments must be NUL-terminated; `out` must be writable.
 */
enum CambrianStatus cambrian_interval_homotopy(const struct CambrianLattice *lattice,
                                               const char *lower,
                                               const char *upper,
                                               struct CambrianHomotopy *out);

/**
 * Analyses every interval and returns the summary as JSON. `verified`
 * receives whether every interval passed all checks.
 *
 * # Safety
 * `lattice` must be a live handle; out-pointers must be writable.
 */
enum CambrianStatus cambrian_lattice_summary_json(const struct CambrianLattice *lattice,
                                                  bool *verified,
                                                  char **out);

/**
 * Library version as a static string.
 */
const char *cambrian_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CAMBRIAN_H */
