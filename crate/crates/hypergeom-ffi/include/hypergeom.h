#ifndef HYPERGEOM_H
#define HYPERGEOM_H

/* Generated by cbindgen from the hypergeom-ffi crate; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes of every fallible call.
typedef enum HgmStatus {
  HGM_STATUS_OK = 0,
  HGM_STATUS_PARAMETER_ERROR = 1,
  HGM_STATUS_PARSE_ERROR = 2,
  HGM_STATUS_INCOMPATIBLE_PRIME = 3,
  HGM_STATUS_DOMAIN_ERROR = 4,
  HGM_STATUS_PRECISION_ERROR = 5,
  HGM_STATUS_CONSISTENCY_ERROR = 6,
  HGM_STATUS_INTEGRALITY_ERROR = 7,
  HGM_STATUS_TRUNCATION_ERROR = 8,
  HGM_STATUS_GRID_ERROR = 9,
  HGM_STATUS_IO_ERROR = 10,
  HGM_STATUS_NULL_POINTER = 11,
  HGM_STATUS_INVALID_UTF8 = 12,
  HGM_STATUS_BUFFER_TOO_SMALL = 13,
  HGM_STATUS_PANIC = 14,
} HgmStatus;

// Shared q-expansion store for eigencoefficient extraction.
typedef struct HgmEigenTables HgmEigenTables;

// Discrete-log tables and embedding choice for one odd prime.
typedef struct HgmPrimeContext HgmPrimeContext;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copy the last error message of this thread into `buf`; returns the
// number of bytes (excluding the terminator) that the full message has.
uintptr_t hgm_last_error(char *buf, uintptr_t buf_len);

// Create a prime-field context; `root_choice` must be coprime to p-1
// (pass 1 for the default embedding).
//
// # Safety
// `out` must be a valid pointer.
enum HgmStatus hgm_prime_context_new(uint64_t p,
                                     uint64_t root_choice,
                                     struct HgmPrimeContext **out);

// Destroy a context created by `hgm_prime_context_new`.
//
// # Safety
// `ctx` must come from `hgm_prime_context_new` and not be used after.
void hgm_prime_context_free(struct HgmPrimeContext *ctx);

// Create an expansion store with the default verification depth.
//
// # Safety
// `out` must be a valid pointer.
enum HgmStatus hgm_eigen_tables_new(struct HgmEigenTables **out);

// Destroy a store created by `hgm_eigen_tables_new`.
//
// # Safety
// `tables` must come from `hgm_eigen_tables_new` and not be used after.
void hgm_eigen_tables_free(struct HgmEigenTables *tables);

// Normalized character sum of a datum string "r1,..;q1,..@lambda" over
// the context's prime: complex value plus the certified rounding bound.
//
// # Safety
// All pointers must be valid; the datum must be NUL-terminated UTF-8.
enum HgmStatus hgm_h_value(const struct HgmPrimeContext *ctx,
                           const char *datum,
                           double *out_re,
                           double *out_im,
                           double *out_abs_err);

// As `hgm_h_value`, but certified-rounded to an integer.
//
// # Safety
// All pointers must be valid; the datum must be NUL-terminated UTF-8.
enum HgmStatus hgm_h_certified_integer(const struct HgmPrimeContext *ctx,
                                       const char *datum,
                                       int64_t *out);

// Morita Gamma at num/den mod p^k: writes the unit residue (the value is
// always a unit, so the valuation is zero).
//
// # Safety
// `out_unit` must be a valid pointer.
enum HgmStatus hgm_gamma_p(int64_t num, int64_t den, uint64_t p, uint32_t k, uint64_t *out_unit);

// Teichmueller lift of a mod p^k.
//
// # Safety
// `out` must be a valid pointer.
enum HgmStatus hgm_teichmuller(uint64_t a, uint64_t p, uint32_t k, uint64_t *out);

// p-th coefficient of the weight-2 eigenform attached to orbit
// denominator `d`, for p = 1 mod lcm(4, d).
//
// # Safety
// `tables` and `out` must be valid pointers.
enum HgmStatus hgm_ap_weight2(const struct HgmEigenTables *tables,
                              uint64_t d,
                              uint64_t p,
                              int64_t *out);

// p-th coefficient of the weight-3 eigenform attached to orbit
// denominator `d`, for p = 1 mod lcm(4, d).
//
// # Safety
// `tables` and `out` must be valid pointers.
enum HgmStatus hgm_ap_weight3(const struct HgmEigenTables *tables,
                              uint64_t d,
                              uint64_t p,
                              int64_t *out);

// Period value P(r, s) as a decimal string at the requested precision,
// computed and cross-checked along two routes.
//
// # Safety
// `buf` must point to `buf_len` writable bytes.
enum HgmStatus hgm_p_value(int64_t r_num,
                           int64_t r_den,
                           int64_t s_num,
                           int64_t s_den,
                           uint32_t digits,
                           char *buf,
                           uintptr_t buf_len);

// L-value of the weight-3 family member at tau -> scale tau, argument
// k in {1, 2}, as a decimal string.
//
// # Safety
// `buf` must point to `buf_len` writable bytes.
enum HgmStatus hgm_lvalue_weight3(int64_t r_num,
                                  int64_t r_den,
                                  int64_t s_num,
                                  int64_t s_den,
                                  uint64_t scale,
                                  uint32_t k,
                                  uint32_t digits,
                                  char *buf,
                                  uintptr_t buf_len);

// Library version as a static NUL-terminated string.
const char *hgm_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HYPERGEOM_H */
