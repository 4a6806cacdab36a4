#ifndef DELSARTE_H
#define DELSARTE_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DelsarteLabel {
  DELSARTE_LABEL_IN_LAMBDA = 0,
  DELSARTE_LABEL_IN_L0 = 1,
  DELSARTE_LABEL_DECOMPOSABLE = 2,
  DELSARTE_LABEL_REGULAR = 3,
  DELSARTE_LABEL_EXCEPTIONAL = 4,
} DelsarteLabel;

typedef enum DelsarteStatus {
  DELSARTE_STATUS_OK = 0,
  DELSARTE_STATUS_NULL_POINTER = 1,
  DELSARTE_STATUS_INVALID_ARGUMENT = 2,
  DELSARTE_STATUS_SINGULAR_MATRIX = 3,
  DELSARTE_STATUS_UNKNOWN_CASE = 4,
  DELSARTE_STATUS_UNCLASSIFIABLE = 5,
  DELSARTE_STATUS_TOO_LARGE = 6,
  DELSARTE_STATUS_INTERNAL = 7,
  DELSARTE_STATUS_PANIC = 8,
} DelsarteStatus;

/**
 * Opaque handle to a Delsarte surface of fixed degree.
 */
typedef struct DelsarteSurface DelsarteSurface;

/**
 * Opaque handle to the table of Picard formulas.
 */
typedef struct DelsarteTable DelsarteTable;

/**
 * Invariants of one surface.
 */
typedef struct DelsarteReport {
  uint32_t degree;
  uint64_t order_l;
  uint64_t order_l0;
  uint64_t lefschetz;
  int64_t betti2;
  int64_t picard;
  int64_t hodge11;
  bool maximal;
  uint64_t decomposable;
  uint64_t regular;
  uint64_t exceptional;
} DelsarteReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Version string of the library, static and NUL-terminated.
 */
const char *delsarte_version(void);

/**
 * Copies the last error message of this thread into `buf`, truncated and
 * NUL-terminated. Returns the full message length in bytes.
 *
 * # Safety
 * `buf` must be null or valid for `len` bytes.
 */
size_t delsarte_last_error(char *buf, size_t len);

/**
 * Creates a surface from 16 row-major exponents and its degree.
 *
 * # Safety
 * `entries` must point to 16 readable `int64_t`, `out` to a writable handle.
 */
enum DelsarteStatus delsarte_surface_new(const int64_t *entries,
                                         uint32_t degree,
                                         struct DelsarteSurface **out);

/**
 * Releases a surface. Null is ignored.
 *
 * # Safety
 * `surface` must come from this library and not be used afterwards.
 */
void delsarte_surface_free(struct DelsarteSurface *surface);

/**
 * Computes the invariants of a surface.
 *
 * # Safety
 * `surface` must be a live handle, `out` writable.
 */
enum DelsarteStatus delsarte_surface_report(const struct DelsarteSurface *surface,
                                            uint64_t max_order,
                                            struct DelsarteReport *out);

/**
 * Loads the shipped formula table.
 *
 * # Safety
 * `out` must be writable.
 */
enum DelsarteStatus delsarte_table_load(struct DelsarteTable **out);

/**
 * Releases a table. Null is ignored.
 *
 * # Safety
 * `table` must come from this library and not be used afterwards.
 */
void delsarte_table_free(struct DelsarteTable *table);

/**
 * Value of the tabulated Picard formula of a case at degree `n`.
 *
 * # Safety
 * `table` must be a live handle, `out` writable.
 */
enum DelsarteStatus delsarte_table_evaluate(const struct DelsarteTable *table,
                                            uint32_t case_id,
                                            int64_t n,
                                            int64_t *out);

/**
 * Creates the surface of a catalog case at degree `n`.
 *
 * # Safety
 * `table` must be a live handle, `out` writable.
 */
enum DelsarteStatus delsarte_table_surface(const struct DelsarteTable *table,
                                           uint32_t case_id,
                                           int64_t n,
                                           struct DelsarteSurface **out);

/**
 * Labels the vector with coordinates `num[i]/den[i]` mod 1.
 *
 * # Safety
 * `num` and `den` must point to 4 readable `int64_t`, `out` writable.
 */
enum DelsarteStatus delsarte_classify(const int64_t *num,
                                      const int64_t *den,
                                      uint64_t max_order,
                                      enum DelsarteLabel *out);

/**
 * Number of exceptional elements of order at most `max_order`.
 *
 * # Safety
 * `out` must be writable.
 */
enum DelsarteStatus delsarte_exceptional_count(uint64_t max_order, uint64_t *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* DELSARTE_H */
