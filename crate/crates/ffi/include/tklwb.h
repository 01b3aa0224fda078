#ifndef TKLWB_H
#define TKLWB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes. The first five agree with the command line exit codes.
typedef enum TklwbStatus {
  TKLWB_STATUS_OK = 0,
  // A verification sweep found violations; its report is still returned.
  TKLWB_STATUS_VIOLATIONS = 1,
  TKLWB_STATUS_INVALID_ARGUMENT = 2,
  TKLWB_STATUS_INTERNAL = 3,
  TKLWB_STATUS_RESOURCE_LIMIT = 4,
  TKLWB_STATUS_NULL_POINTER = 5,
  TKLWB_STATUS_PANIC = 6,
} TklwbStatus;

// A Coxeter system with its memo tables.
typedef struct TklwbSystem TklwbSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The library version as a static string.
const char *tklwb_version(void);

// Message for the last failed call on this thread, or an empty string.
// Valid until the next library call on this thread.
const char *tklwb_last_error(void);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void tklwb_string_free(char *s);

// Creates a system on `gens` generators with diagram involution `star`
// (`"id"` or swaps such as `"(a b)(c d)"`).
//
// # Safety
// `star` must be a valid C string and `out` a writable pointer.
enum TklwbStatus tklwb_system_new(size_t gens, const char *star, struct TklwbSystem **out);

// # Safety
// `sys` must be null or a handle from [`tklwb_system_new`], not yet freed.
void tklwb_system_free(struct TklwbSystem *sys);

// Largest enumeration size for sweeps and dumps.
//
// # Safety
// `sys` must be a live handle.
enum TklwbStatus tklwb_system_set_cap(struct TklwbSystem *sys, size_t cap);

// `P_{y,w}` as text.
//
// # Safety
// `sys` must be a live handle, `y` and `w` valid C strings, `out` writable.
enum TklwbStatus tklwb_kl(struct TklwbSystem *sys, const char *y, const char *w, char **out);

// Twisted `P_{y,w}` as text. Both arguments must be twisted involutions.
//
// # Safety
// As for [`tklwb_kl`].
enum TklwbStatus tklwb_tkl(struct TklwbSystem *sys, const char *y, const char *w, char **out);

// Half-sum and half-difference of the untwisted and twisted polynomials.
//
// # Safety
// As for [`tklwb_kl`], with two output pointers.
enum TklwbStatus tklwb_pm(struct TklwbSystem *sys,
                          const char *y,
                          const char *w,
                          char **plus,
                          char **minus);

// `C_x A_y` in the A-basis, one `z TAB poly` line per term.
//
// # Safety
// As for [`tklwb_kl`].
enum TklwbStatus tklwb_structure(struct TklwbSystem *sys, const char *x, const char *y, char **out);

// `C_s A_w` in the A-basis, one `z TAB poly` line per term.
//
// # Safety
// As for [`tklwb_kl`].
enum TklwbStatus tklwb_mult(struct TklwbSystem *sys, const char *s, const char *w, char **out);

// Runs the sweep named `check` and writes its JSON report to `out`.
// Returns `TKLWB_STATUS_VIOLATIONS` if the report is not clean.
//
// # Safety
// As for [`tklwb_kl`].
enum TklwbStatus tklwb_verify(struct TklwbSystem *sys,
                              const char *check,
                              size_t max_rho,
                              size_t max_len,
                              char **out);

// Full tables in the cache file format.
//
// # Safety
// `sys` must be a live handle and `out` writable.
enum TklwbStatus tklwb_dump(struct TklwbSystem *sys, size_t max_rho, size_t max_len, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TKLWB_H */
