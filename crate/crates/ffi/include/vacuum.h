#ifndef VACUUM_H
#define VACUUM_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/*
 Result codes.
 */
typedef enum VacuumStatus {
  VACUUM_STATUS_OK = 0,
  VACUUM_STATUS_NULL_POINTER = 1,
  VACUUM_STATUS_INVALID_UTF8 = 2,
  VACUUM_STATUS_PARSE_ERROR = 3,
  VACUUM_STATUS_INVALID_ALGEBRA = 4,
  VACUUM_STATUS_CRITICAL_LEVEL = 5,
  VACUUM_STATUS_NOT_CRITICAL = 6,
  VACUUM_STATUS_NOT_NILPOTENT = 7,
  VACUUM_STATUS_INVALID_ARGUMENT = 8,
  VACUUM_STATUS_INTERNAL = 9,
  VACUUM_STATUS_PANIC = 10,
} VacuumStatus;

/*
 Opaque algebra handle.
 */
typedef struct VacuumAlgebra VacuumAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Builds an algebra from a Cartan type such as `"A2"`.

 # Safety
 `spec` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum VacuumStatus vacuum_algebra_new(const char *spec, struct VacuumAlgebra **out);

/*
 Releases a handle. Null is ignored.

 # Safety
 `alg` must come from `vacuum_algebra_new` and not be used afterwards.
 */
void vacuum_algebra_free(struct VacuumAlgebra *alg);

/*
 Dimension, rank and dual Coxeter number.

 # Safety
 `alg` must be a live handle; the output pointers must be valid.
 */
enum VacuumStatus vacuum_algebra_info(const struct VacuumAlgebra *alg,
                                      uintptr_t *dim,
                                      uintptr_t *rank,
                                      int64_t *dual_coxeter);

/*
 Level classification: whether `V^k(g)` fails to be simple, and whether
 `k` is admissible.

 # Safety
 `alg` must be a live handle, `level` a NUL-terminated string such as
 `"-1/2"`, and the output pointers valid.
 */
enum VacuumStatus vacuum_classify_level(const struct VacuumAlgebra *alg,
                                        const char *level,
                                        bool *not_simple,
                                        bool *admissible);

/*
 Singular vectors up to `delta_max` (0 picks a default by rank), as a JSON
 report.

 # Safety
 `alg` must be a live handle, `level` NUL-terminated, `out` valid. The
 returned string must be released with `vacuum_string_free`.
 */
enum VacuumStatus vacuum_find_singular(const struct VacuumAlgebra *alg,
                                       const char *level,
                                       int64_t delta_max,
                                       char **out);

/*
 Simplicity verdicts plus the singular-vector check, as a JSON report.

 # Safety
 Same contract as `vacuum_find_singular`.
 */
enum VacuumStatus vacuum_simple_check(const struct VacuumAlgebra *alg,
                                      const char *level,
                                      int64_t delta_max,
                                      char **out);

/*
 Critical-level witnesses up to `graded_max` translations (0 picks 4).

 # Safety
 `alg` must be a live handle and `out` valid.
 */
enum VacuumStatus vacuum_critical(const struct VacuumAlgebra *alg, int64_t graded_max, char **out);

/*
 sl₂-triple and slice data for `"regular"`, `"minimal"` or an explicit
 element.

 # Safety
 `alg` must be a live handle, `nilpotent` NUL-terminated, `out` valid.
 */
enum VacuumStatus vacuum_slodowy(const struct VacuumAlgebra *alg,
                                 const char *nilpotent,
                                 char **out);

/*
 Seeded property suites.

 # Safety
 `out` must be valid.
 */
enum VacuumStatus vacuum_selftest(uint64_t seed, char **out);

/*
 Releases a string returned by this library. Null is ignored.

 # Safety
 `s` must come from this library and not be used afterwards.
 */
void vacuum_string_free(char *s);

/*
 Message of the last failed call on this thread, or null. Valid until the
 next call into the library.
 */
const char *vacuum_last_error(void);

/*
 Library version, static.
 */
const char *vacuum_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VACUUM_H */
