#ifndef FUSSCAT_H
#define FUSSCAT_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Families that can be counted.
typedef enum FcObject {
  FC_OBJECT_WEAK = 0,
  FC_OBJECT_NC = 1,
  FC_OBJECT_SORT = 2,
  FC_OBJECT_ASSO = 3,
} FcObject;

typedef enum FcStatus {
  FC_STATUS_OK = 0,
  FC_STATUS_NULL_POINTER = 1,
  FC_STATUS_INVALID_INPUT = 2,
  FC_STATUS_NOT_SORTABLE = 3,
  FC_STATUS_TOO_LARGE = 4,
  FC_STATUS_BUFFER_TOO_SMALL = 5,
  FC_STATUS_INTERNAL = 6,
} FcStatus;

// A positive braid in Garside normal form, tied to the system it was parsed in.
typedef struct FcBraid FcBraid;

// A finite Coxeter system.
typedef struct FcSystem FcSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failing call on this thread; empty after a success. Owned by the library.
const char *fc_last_error(void);

// Builds a system from a type such as "A3", "I2(5)" or "A1xA1".
//
// # Safety
// `name` must be a NUL-terminated string and `out_sys` writable.
enum FcStatus fc_system_new(const char *name, struct FcSystem **out_sys);

// # Safety
// `sys` must come from [`fc_system_new`] and not be used afterwards. Null is ignored.
void fc_system_free(struct FcSystem *sys);

// # Safety
// `sys` must be a live handle and `rank` writable.
enum FcStatus fc_system_rank(const struct FcSystem *sys, size_t *rank);

// Number of positive roots.
//
// # Safety
// `sys` must be a live handle and `n` writable.
enum FcStatus fc_system_n_pos(const struct FcSystem *sys, size_t *n);

// # Safety
// `sys` must be a live handle and `h` writable.
enum FcStatus fc_system_coxeter_number(const struct FcSystem *sys, uint32_t *h);

// Fuss-Catalan number from the degrees.
//
// # Safety
// `sys` must be a live handle and `value` writable.
enum FcStatus fc_fuss_catalan(const struct FcSystem *sys, uint32_t m, uint64_t *value);

// Counts a family by enumeration. `c` is a generator ordering such as "s1 s2 s3"; null means
// diagram order. `Weak` ignores `c`.
//
// # Safety
// `sys` must be a live handle, `c` null or NUL-terminated, `count` writable.
enum FcStatus fc_count(const struct FcSystem *sys,
                       enum FcObject kind,
                       const char *c,
                       uint32_t m,
                       uint64_t *count);

// Parses a braid from a word ("s t s t") or a Garside string ("sts.t").
//
// # Safety
// `sys` must be a live handle, `word` NUL-terminated, `out_braid` writable.
enum FcStatus fc_braid_parse(const struct FcSystem *sys,
                             const char *word,
                             struct FcBraid **out_braid);

// # Safety
// `b` must come from this library and not be used afterwards. Null is ignored.
void fc_braid_free(struct FcBraid *b);

// Number of Garside factors and total length.
//
// # Safety
// `b` must be a live handle; `degree` and `length` writable.
enum FcStatus fc_braid_degree(const struct FcBraid *b, size_t *degree, size_t *length);

// Writes the normal form ("sts.t") into `buf`. `needed` receives the size including the NUL,
// so a call with `cap` = 0 queries the size.
//
// # Safety
// `sys` and `b` must be live handles, `buf` writable for `cap` bytes, `needed` writable.
enum FcStatus fc_braid_string(const struct FcSystem *sys,
                              const struct FcBraid *b,
                              char *buf,
                              size_t cap,
                              size_t *needed);

// Greatest common left divisor (`lcm` = false) or least common right multiple (`lcm` = true).
//
// # Safety
// All handles must be live and `out_braid` writable.
enum FcStatus fc_braid_combine(const struct FcSystem *sys,
                               const struct FcBraid *a,
                               const struct FcBraid *b,
                               bool lcm,
                               struct FcBraid **out_braid);

// Whether `b` is c-sortable in the interval of degree at most `m`. Fails with `InvalidInput`
// when `b` lies outside the interval.
//
// # Safety
// Handles must be live, `c` null or NUL-terminated, `result` writable.
enum FcStatus fc_is_sortable(const struct FcSystem *sys,
                             const char *c,
                             uint32_t m,
                             const struct FcBraid *b,
                             bool *result);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FUSSCAT_H */
