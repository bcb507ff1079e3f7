#ifndef HYPERTIGHT_H
#define HYPERTIGHT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum HtStatus {
  HT_STATUS_OK = 0,
  HT_STATUS_INVALID_ARGUMENT = 1,
  HT_STATUS_PARSE = 2,
  HT_STATUS_CONTRACT_VIOLATION = 3,
  HT_STATUS_OVERFLOW = 4,
  HT_STATUS_IO = 5,
  HT_STATUS_NULL_POINTER = 6,
  HT_STATUS_BUFFER_TOO_SMALL = 7,
  HT_STATUS_PANIC = 8,
} HtStatus;

/**
 * Opaque hypergraph handle.
 */
typedef struct HtHypergraph HtHypergraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread (empty if none), copied into
 * `buf` as a NUL-terminated string.
 *
 * # Safety
 * `buf` must be writable for `cap` bytes; `needed` may be null.
 */
enum HtStatus ht_last_error(char *buf, size_t cap, size_t *needed);

/**
 * Parses the `.hg` text format.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum HtStatus ht_hypergraph_parse(const char *text, struct HtHypergraph **out);

/**
 * Builds a `k`-graph on `{1..n}` from `edge_count * k` vertex ids.
 *
 * # Safety
 * `vertices` must point to `edge_count * k` readable ids (or be null when
 * `edge_count` is 0); `out` must be writable.
 */
enum HtStatus ht_hypergraph_new(size_t k,
                                size_t n,
                                const uint32_t *vertices,
                                size_t edge_count,
                                struct HtHypergraph **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `g` must come from this library and not be used afterwards.
 */
void ht_hypergraph_free(struct HtHypergraph *g);

/**
 * Uniformity, vertex count and edge count.
 *
 * # Safety
 * `g` must be a live handle; the out pointers must be writable.
 */
enum HtStatus ht_hypergraph_shape(const struct HtHypergraph *g,
                                  size_t *k,
                                  size_t *n,
                                  size_t *edges);

/**
 * Canonical `.hg` text.
 *
 * # Safety
 * `g` must be a live handle; `buf` writable for `cap` bytes; `needed` may be null.
 */
enum HtStatus ht_hypergraph_emit(const struct HtHypergraph *g,
                                 char *buf,
                                 size_t cap,
                                 size_t *needed);

/**
 * Tight component sizes in descending order. `count` receives the number
 * of components; at most `cap` sizes are written.
 *
 * # Safety
 * `g` must be a live handle; `sizes` writable for `cap` entries (may be
 * null when `cap` is 0); `count` writable.
 */
enum HtStatus ht_tight_components(const struct HtHypergraph *g,
                                  size_t *sizes,
                                  size_t cap,
                                  size_t *count);

/**
 * Matching number; `optimal` is 0 when the time limit (seconds, 0 = none)
 * cut the search short.
 *
 * # Safety
 * `g` must be a live handle; out pointers writable.
 */
enum HtStatus ht_max_matching(const struct HtHypergraph *g,
                              double time_limit,
                              size_t *size,
                              int32_t *optimal);

/**
 * Tight Hamilton cycle: `verdict` is 1 (yes), 0 (no) or -1 (unknown).
 * When found, the cycle is written to `cycle` (capacity `cap`, at least n).
 *
 * # Safety
 * `g` must be a live handle; `cycle` writable for `cap` entries or null.
 */
enum HtStatus ht_tight_hamilton(const struct HtHypergraph *g,
                                double time_limit,
                                int32_t *verdict,
                                uint32_t *cycle,
                                size_t cap);

/**
 * Left-shift closure as a new handle.
 *
 * # Safety
 * `g` must be a live handle; `out` writable.
 */
enum HtStatus ht_left_shift_closure(const struct HtHypergraph *g,
                                    struct HtHypergraph **out,
                                    size_t *sweeps);

/**
 * `σ³(β³ + sβ² + pβ + t)` with `β = 1/σ - 3`.
 *
 * # Safety
 * `out` must be writable.
 */
enum HtStatus ht_f_spt(double sigma, double s, double p, double t, double *out);

/**
 * Checks the eleven listed `(s, p, t)` triples; `all_pass` receives 0 or 1.
 *
 * # Safety
 * `all_pass` must be writable.
 */
enum HtStatus ht_verify_fact(double step, double tol, int32_t *all_pass);

/**
 * Largest 3-graph on `n` vertices with matching number at most `s`, and
 * the closed form it should equal.
 *
 * # Safety
 * Out pointers must be writable.
 */
enum HtStatus ht_emc_max_edges(size_t n,
                               size_t s,
                               size_t workers,
                               size_t *value,
                               uint64_t *formula);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HYPERTIGHT_H */
