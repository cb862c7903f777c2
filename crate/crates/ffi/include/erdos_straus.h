#ifndef ERDOS_STRAUS_H
#define ERDOS_STRAUS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum EsStatus {
  ES_STATUS_OK = 0,
  // The search completed without a hit, or the predicate is false.
  ES_STATUS_NOT_FOUND = 1,
  ES_STATUS_DOMAIN = 2,
  ES_STATUS_OVERFLOW = 3,
  ES_STATUS_RESOURCE = 4,
  ES_STATUS_INTERNAL = 5,
  ES_STATUS_IO = 6,
  ES_STATUS_FORMAT = 7,
  ES_STATUS_NULL_POINTER = 8,
  ES_STATUS_PANIC = 9,
} EsStatus;

// Opaque scan result.
typedef struct EsScan EsScan;

// Opaque smallest-prime-factor sieve.
typedef struct EsSieve EsSieve;

// Opaque list of triples; each carries its own denominator.
typedef struct EsTripleList EsTripleList;

// Solution `4/n = 1/x + 1/y + 1/z` with `x <= y <= z`.
typedef struct EsTriple {
  uint64_t n;
  uint64_t x;
  uint64_t y;
  uint64_t z;
} EsTriple;

typedef struct EsTypeAWitness {
  uint64_t p;
  uint64_t k;
  uint64_t t;
  uint64_t w;
  uint64_t d;
  uint64_t n;
  uint64_t u;
  uint64_t v;
} EsTypeAWitness;

typedef struct EsTypeBWitness {
  uint64_t a;
  uint64_t d;
  uint64_t n;
  uint64_t u;
} EsTypeBWitness;

typedef struct EsTypeCWitness {
  uint64_t n_val;
  uint64_t d;
  uint64_t m;
  uint64_t v;
} EsTypeCWitness;

typedef struct EsOptU64 {
  bool present;
  uint64_t value;
} EsOptU64;

// One scan row. `has_c` is meaningful only when `has_c_checked` is set.
typedef struct EsScanRecord {
  uint64_t n;
  bool prime;
  struct EsOptU64 k;
  bool has_a;
  struct EsOptU64 a_t;
  struct EsOptU64 a_w;
  struct EsOptU64 a_d;
  bool has_b;
  struct EsOptU64 b_d;
  struct EsOptU64 b_n;
  struct EsOptU64 b_u;
  bool has_c_checked;
  bool has_c;
  struct EsOptU64 c_d;
  struct EsOptU64 c_m;
  struct EsOptU64 both_ab_d;
  struct EsOptU64 distinct_a_count;
} EsScanRecord;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failure on this thread, or null. The pointer stays
// valid until the next failing call on the same thread.
const char *es_last_error_message(void);

bool es_is_prime(uint64_t n);

// Writes whether `4/n = 1/x + 1/y + 1/z` to `out`.
//
// # Safety
// `out` must be valid for writes.
enum EsStatus es_verify(uint64_t n, uint64_t x, uint64_t y, uint64_t z, bool *out);

// Jacobi symbol `(a/m)` for odd positive `m`.
//
// # Safety
// `out` must be valid for writes.
enum EsStatus es_jacobi(int64_t a, uint64_t m, int8_t *out);

// Builds a sieve covering `[0, limit]`.
//
// # Safety
// `out` must be valid for writes. Release the handle with [`es_sieve_free`].
enum EsStatus es_sieve_new(uint64_t limit, struct EsSieve **out);

// # Safety
// `sieve` must be null or a handle from [`es_sieve_new`] not yet freed.
void es_sieve_free(struct EsSieve *sieve);

// All solutions for `n`, ascending.
//
// # Safety
// `out` must be valid for writes. Release with [`es_triple_list_free`].
enum EsStatus es_enumerate_all(uint64_t n, struct EsTripleList **out);

// The consecutive run ending at `4 * n!`; entry `i` solves its own `n`.
//
// # Safety
// `out` must be valid for writes. Release with [`es_triple_list_free`].
enum EsStatus es_chain(uint64_t n, struct EsTripleList **out);

// # Safety
// `list` must be null or a live list handle.
size_t es_triple_list_len(const struct EsTripleList *list);

// # Safety
// `list` must be a live list handle and `out` valid for writes.
enum EsStatus es_triple_list_get(const struct EsTripleList *list,
                                 size_t index,
                                 struct EsTriple *out);

// # Safety
// `list` must be null or a list handle not yet freed.
void es_triple_list_free(struct EsTripleList *list);

// First Type A witness of `p = 1 (mod 4)` and its triple.
//
// # Safety
// `sieve` may be null. `witness` and `triple` must be valid for writes.
enum EsStatus es_type_a_search(uint64_t p,
                               const struct EsSieve *sieve,
                               struct EsTypeAWitness *witness,
                               struct EsTriple *triple);

// First Type B witness `(d, n)` of `a >= 2` by the congruence search.
//
// # Safety
// `sieve` may be null. `witness` and `triple` must be valid for writes.
enum EsStatus es_type_b_search(uint64_t a,
                               const struct EsSieve *sieve,
                               struct EsTypeBWitness *witness,
                               struct EsTriple *triple);

// First Type C witness of `n = 1 (mod 4)`.
//
// # Safety
// `sieve` may be null. `witness` and `triple` must be valid for writes.
enum EsStatus es_type_c_search(uint64_t n,
                               const struct EsSieve *sieve,
                               struct EsTypeCWitness *witness,
                               struct EsTriple *triple);

// Dual of the Type B witness `(d, n)` for `a`: writes `n'` and its modulus.
//
// # Safety
// `n_prime` and `modulus` must be valid for writes.
enum EsStatus es_dual_witness(uint64_t a,
                              uint64_t d,
                              uint64_t n,
                              uint64_t *n_prime,
                              uint64_t *modulus);

// Classifies `[lo, hi]` (primes only, or every `n = 1 mod 4`). The sieve
// must cover `hi`.
//
// # Safety
// `sieve` must be a live handle; `out` must be valid for writes. Release
// with [`es_scan_free`].
enum EsStatus es_scan_range(uint64_t lo,
                            uint64_t hi,
                            bool primes_only,
                            size_t workers,
                            bool with_counts,
                            bool type_c,
                            const struct EsSieve *sieve,
                            struct EsScan **out);

// # Safety
// `scan` must be null or a live scan handle.
size_t es_scan_len(const struct EsScan *scan);

// # Safety
// `scan` must be a live scan handle and `out` valid for writes.
enum EsStatus es_scan_get(const struct EsScan *scan, size_t index, struct EsScanRecord *out);

// Writes the scan as CSV, or JSON when `json` is set; `bytes` receives the
// size written.
//
// # Safety
// `scan` must be a live scan handle, `path` a NUL-terminated UTF-8 string,
// and `bytes` null or valid for writes.
enum EsStatus es_scan_write_report(const struct EsScan *scan,
                                   const char *path,
                                   bool json,
                                   uint64_t *bytes);

// # Safety
// `scan` must be null or a scan handle not yet freed.
void es_scan_free(struct EsScan *scan);

// Primes up to `limit` violating conjecture 1 (A or B) or 2 (A, B or C).
// Up to `cap` of them are copied to `primes`; `count` receives the total.
// Returns `ES_STATUS_OK` when there are none, `ES_STATUS_NOT_FOUND`
// otherwise.
//
// # Safety
// `sieve` must be a live handle covering `limit`; `primes` must be valid
// for `cap` writes (or null with `cap == 0`); `count` must be valid for
// writes.
enum EsStatus es_find_counterexamples(uint64_t limit,
                                      uint32_t conjecture,
                                      size_t workers,
                                      const struct EsSieve *sieve,
                                      uint64_t *primes,
                                      size_t cap,
                                      size_t *count);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ERDOS_STRAUS_H */
