#ifndef QCOH_H
#define QCOH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

#define QCOH_KIND_OG 0

#define QCOH_KIND_LG 1

typedef enum QcohStatus {
  QCOH_STATUS_OK = 0,
  QCOH_STATUS_NULL_POINTER = 1,
  QCOH_STATUS_INVALID_ARGUMENT = 2,
  QCOH_STATUS_OUT_OF_RANGE = 3,
  QCOH_STATUS_PRECISION = 4,
  QCOH_STATUS_BUFFER_TOO_SMALL = 5,
  QCOH_STATUS_INTERNAL = 6,
} QcohStatus;

// Opaque handle to the cached evaluation tables of one ring.
typedef struct QcohRing QcohRing;

// One term `coeff · (class) · q^q_degree`; `class_index` is a basis position.
typedef struct QcohTerm {
  uint32_t class_index;
  uint32_t q_degree;
  int64_t coeff;
} QcohTerm;

// `status`: 0 pass, 1 fail, 2 indeterminate.
typedef struct QcohConjectureO {
  double t0;
  uint32_t fano_index;
  uint32_t max_modulus_count;
  uint32_t expected_max_modulus_count;
  bool cond1;
  bool cond2;
  bool cond3;
  uint32_t status;
} QcohConjectureO;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Builds (or fetches from the cache) the ring `kind(n)`. Free with [`qcoh_ring_free`].
//
// # Safety
// `out` must be a valid pointer to writable storage for one pointer.
enum QcohStatus qcoh_ring_new(uint32_t kind, uint32_t n, struct QcohRing **out);

// # Safety
// `ring` must come from [`qcoh_ring_new`] and not have been freed; null is ignored.
void qcoh_ring_free(struct QcohRing *ring);

// Number of Schubert classes, `2^n`.
//
// # Safety
// `ring` must be a live handle and `out` writable.
enum QcohStatus qcoh_ring_dimension(const struct QcohRing *ring, uintptr_t *out);

// The basis class at `index` as a NUL-terminated string like `"3,1"`.
//
// # Safety
// `ring` must be a live handle; `buf` must hold `cap` bytes; `out_len` writable.
enum QcohStatus qcoh_ring_basis_class(const struct QcohRing *ring,
                                      uintptr_t index,
                                      char *buf,
                                      uintptr_t cap,
                                      uintptr_t *out_len);

// Basis position of a partition.
//
// # Safety
// `ring` must be a live handle; `partition` a NUL-terminated string; `out` writable.
enum QcohStatus qcoh_ring_class_index(const struct QcohRing *ring,
                                      const char *partition,
                                      uintptr_t *out);

// Structure constants of `a · b`, sorted by `q`-degree then basis position.
//
// # Safety
// `ring` must be a live handle; `a`, `b` NUL-terminated; `out` must hold `cap` terms.
enum QcohStatus qcoh_ring_multiply(const struct QcohRing *ring,
                                   const char *a,
                                   const char *b,
                                   struct QcohTerm *out,
                                   uintptr_t cap,
                                   uintptr_t *out_len);

// Row-major `dim × dim` matrix of multiplication by `class` at `q = 1`.
//
// # Safety
// `ring` must be a live handle; `class` NUL-terminated; `out` must hold `cap` values.
enum QcohStatus qcoh_ring_operator_matrix(const struct QcohRing *ring,
                                          const char *class_,
                                          int64_t *out,
                                          uintptr_t cap,
                                          uintptr_t *out_len);

// Eigenvalues of `[c₁]`, one per Peterson point.
//
// # Safety
// `re` and `im` must each hold `cap` doubles; `out_len` writable.
enum QcohStatus qcoh_c1_spectrum(uint32_t kind,
                                 uint32_t n,
                                 double *re,
                                 double *im,
                                 uintptr_t cap,
                                 uintptr_t *out_len);

// Conjecture O verdict for `[c₁]` at relative clustering tolerance `tol`.
//
// # Safety
// `out` must be writable.
enum QcohStatus qcoh_conjecture_o(uint32_t kind,
                                  uint32_t n,
                                  double tol,
                                  struct QcohConjectureO *out);

// Copies the message of the last failed call on this thread (empty after a success).
//
// # Safety
// `buf` must hold `cap` bytes; `out_len` writable.
enum QcohStatus qcoh_last_error(char *buf, uintptr_t cap, uintptr_t *out_len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QCOH_H */
