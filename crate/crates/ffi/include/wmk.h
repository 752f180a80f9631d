#ifndef WMK_H
#define WMK_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stdint.h>

// Result of a call. Values are stable.
typedef enum WmkStatus {
  WMK_STATUS_OK = 0,
  // A required pointer argument was null.
  WMK_STATUS_NULL_POINTER = 1,
  // A string argument was not valid UTF-8.
  WMK_STATUS_INVALID_UTF8 = 2,
  // An input hypothesis failed (bad prime, divisibility, field size).
  WMK_STATUS_PRECONDITION = 3,
  // An internal consistency check failed.
  WMK_STATUS_INTERNAL = 4,
} WmkStatus;

// A validated family over its base field.
typedef struct WmkFamily WmkFamily;

// A stringy point count report.
typedef struct WmkReport WmkReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. The pointer
// stays valid until the next wmk call on the same thread.
const char *wmk_last_error(void);

// Builds the family `kind` ("cyclic-l", "cyclic-ll", "sym-2", "sym-ll")
// for the prime `l` over F_{3^r}.
//
// # Safety
// `kind` must be a NUL-terminated string and `out` a valid pointer.
enum WmkStatus wmk_family_new(const char *kind, uint32_t l, uint32_t r, struct WmkFamily **out);

// Releases a family. Null is ignored.
//
// # Safety
// `family` must come from [`wmk_family_new`] and not be used afterwards.
void wmk_family_free(struct WmkFamily *family);

// q = 3^r of the family's field, or 0 for a null handle.
//
// # Safety
// `family` must be null or a live handle.
uint32_t wmk_family_q(const struct WmkFamily *family);

// Order of the group G, or 0 for a null handle.
//
// # Safety
// `family` must be null or a live handle.
uint64_t wmk_family_group_order(const struct WmkFamily *family);

// Computes the stringy point count. With `symbolic` false the report also
// holds the value at the family's q. A positive `truncation` adds the
// partial sum up to that index with its tail bound.
//
// # Safety
// `family` must be a live handle and `out` a valid pointer.
enum WmkStatus wmk_stringy(const struct WmkFamily *family,
                           bool symbolic,
                           uint32_t truncation,
                           struct WmkReport **out);

// Releases a report. Null is ignored.
//
// # Safety
// `report` must come from [`wmk_stringy`] and not be used afterwards.
void wmk_report_free(struct WmkReport *report);

// Euler characteristic of a crepant resolution.
//
// # Safety
// `report` must be a live handle and `out` a valid pointer.
enum WmkStatus wmk_report_euler(const struct WmkReport *report, int64_t *out);

// The polynomial in q as text, e.g. "q^3 + 4*q^2 + 2*q".
//
// # Safety
// `report` must be a live handle and `out` a valid pointer.
enum WmkStatus wmk_report_polynomial(const struct WmkReport *report, char **out);

// The value at q as "num/den" text. Writes null for symbolic reports.
//
// # Safety
// `report` must be a live handle and `out` a valid pointer.
enum WmkStatus wmk_report_value(const struct WmkReport *report, char **out);

// The report serialized as JSON, in the same schema as the CLI.
//
// # Safety
// `report` must be a live handle and `out` a valid pointer.
enum WmkStatus wmk_report_json(const struct WmkReport *report, char **out);

// Runs the oracle suite at `level` (0 none, 1 fast, 2 full). Writes the
// checks as a JSON array to `out_json` and whether all passed to `passed`.
//
// # Safety
// `family` must be a live handle; `passed` and `out_json` valid pointers.
enum WmkStatus wmk_verify_json(const struct WmkFamily *family,
                               uint32_t level,
                               bool *passed,
                               char **out_json);

// The mass formula report for degree `n` as JSON; `r` = 0 leaves q
// symbolic, otherwise q = 3^r.
//
// # Safety
// `out` must be a valid pointer.
enum WmkStatus wmk_mass_json(uint32_t n, uint32_t r, char **out);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be used afterwards.
void wmk_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WMK_H */
