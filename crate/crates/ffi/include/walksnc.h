#ifndef WALKSNC_H
#define WALKSNC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum WsncStatus {
  WSNC_STATUS_OK = 0,
  WSNC_STATUS_NULL_POINTER = 1,
  WSNC_STATUS_INVALID_ARGUMENT = 2,
  WSNC_STATUS_PARSE_ERROR = 3,
  WSNC_STATUS_IO_ERROR = 4,
  WSNC_STATUS_PANIC = 5,
} WsncStatus;

typedef enum WsncStrategy {
  WSNC_STRATEGY_SEPARATED = 0,
  WSNC_STRATEGY_NON_CACHING = 1,
  WSNC_STRATEGY_CACHING = 2,
} WsncStrategy;

/**
 * Opaque immutable formula. Safe to share between threads for concurrent
 * `wsnc_solve` calls.
 */
typedef struct WsncFormula WsncFormula;

/**
 * Opaque result of one `wsnc_solve` call.
 */
typedef struct WsncOutcome WsncOutcome;

/**
 * Solver settings. `timeout_s <= 0` means no wall-clock limit.
 */
typedef struct WsncConfig {
  enum WsncStrategy strategy;
  double noise;
  uint64_t max_flips;
  double timeout_s;
  uint64_t seed;
  uint32_t restarts;
} WsncConfig;

typedef struct WsncPickStats {
  uint64_t picks;
  uint64_t visited_clauses;
  uint64_t zero_break_hits;
  uint64_t noise_picks;
} WsncPickStats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *wsnc_last_error(void);

/**
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum WsncStatus wsnc_formula_parse_dimacs(const char *text, struct WsncFormula **out);

/**
 * # Safety
 * `path` must be a NUL-terminated string; `out` must be writable.
 */
enum WsncStatus wsnc_formula_read_file(const char *path, struct WsncFormula **out);

/**
 * Uniform random k-SAT with `num_clauses` clauses of `width` distinct
 * variables each.
 *
 * # Safety
 * `out` must be writable.
 */
enum WsncStatus wsnc_formula_generate(size_t num_vars,
                                      size_t width,
                                      size_t num_clauses,
                                      uint64_t seed,
                                      struct WsncFormula **out);

/**
 * # Safety
 * `f` must be NULL or a live formula handle.
 */
size_t wsnc_formula_num_vars(const struct WsncFormula *f);

/**
 * # Safety
 * `f` must be NULL or a live formula handle.
 */
size_t wsnc_formula_num_clauses(const struct WsncFormula *f);

/**
 * Writes a newly allocated DIMACS string to `out`; release it with
 * `wsnc_string_free`.
 *
 * # Safety
 * `f` must be a live formula handle; `out` must be writable.
 */
enum WsncStatus wsnc_formula_to_dimacs(const struct WsncFormula *f, char **out);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void wsnc_string_free(char *s);

/**
 * # Safety
 * `f` must be NULL or a live formula handle; it is invalid afterwards.
 */
void wsnc_formula_free(struct WsncFormula *f);

/**
 * # Safety
 * `out` must be writable.
 */
enum WsncStatus wsnc_config_default(struct WsncConfig *out);

/**
 * Runs the solver. The outcome handle is written even when the result is
 * UNKNOWN; release it with `wsnc_outcome_free`.
 *
 * # Safety
 * `f` must be a live formula handle, `cfg` readable, `out` writable.
 */
enum WsncStatus wsnc_solve(const struct WsncFormula *f,
                           const struct WsncConfig *cfg,
                           struct WsncOutcome **out);

/**
 * # Safety
 * `o` must be NULL or a live outcome handle.
 */
bool wsnc_outcome_is_sat(const struct WsncOutcome *o);

/**
 * # Safety
 * `o` must be NULL or a live outcome handle.
 */
uint64_t wsnc_outcome_flips(const struct WsncOutcome *o);

/**
 * # Safety
 * `o` must be NULL or a live outcome handle.
 */
double wsnc_outcome_elapsed_s(const struct WsncOutcome *o);

/**
 * # Safety
 * `o` must be a live outcome handle; `out` writable.
 */
enum WsncStatus wsnc_outcome_stats(const struct WsncOutcome *o, struct WsncPickStats *out);

/**
 * Copies the model into `values[0..len]` as 1 (true) / 0 (false) for
 * variables 1..=len. `len` must equal the formula's variable count.
 * Fails with `InvalidArgument` when the outcome is not SAT.
 *
 * # Safety
 * `o` must be a live outcome handle; `values` must have room for `len`
 * bytes.
 */
enum WsncStatus wsnc_outcome_model(const struct WsncOutcome *o, uint8_t *values, size_t len);

/**
 * # Safety
 * `o` must be NULL or a live outcome handle; it is invalid afterwards.
 */
void wsnc_outcome_free(struct WsncOutcome *o);

/**
 * Checks `values[0..len]` (nonzero = true, for variables 1..=len) against
 * every clause of `f`.
 *
 * # Safety
 * `f` must be a live formula handle, `values` readable for `len` bytes,
 * `out_valid` writable.
 */
enum WsncStatus wsnc_verify_model(const struct WsncFormula *f,
                                  const uint8_t *values,
                                  size_t len,
                                  bool *out_valid);

/**
 * Percentage of runs with `solved[i] != 0`.
 *
 * # Safety
 * `solved` readable for `len` bytes; `out` writable.
 */
enum WsncStatus wsnc_suc(const uint8_t *solved, size_t len, double *out);

/**
 * Penalized average runtime: runs not solved within `cutoff` seconds count
 * as `10 * cutoff`.
 *
 * # Safety
 * `elapsed` and `solved` readable for `len` items; `out` writable.
 */
enum WsncStatus wsnc_par10(const double *elapsed,
                           const uint8_t *solved,
                           size_t len,
                           double cutoff,
                           double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WALKSNC_H */
