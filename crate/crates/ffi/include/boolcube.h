#ifndef BOOLCUBE_H
#define BOOLCUBE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stddef.h>
#include <stdint.h>
#include <stdbool.h>

typedef enum BcStatus {
  BC_STATUS_OK = 0,
  BC_STATUS_NULL_POINTER = 1,
  BC_STATUS_INVALID_ARGUMENT = 2,
  BC_STATUS_ARITY_TOO_LARGE = 3,
  BC_STATUS_PARSE = 4,
  BC_STATUS_NOT_MONOTONE = 5,
  BC_STATUS_CONSTANT_FUNCTION = 6,
  BC_STATUS_PRECONDITION = 7,
  BC_STATUS_BUFFER_TOO_SMALL = 8,
  BC_STATUS_PANIC = 9,
} BcStatus;

/*
 Opaque Boolean function.
 */
typedef struct BcFunction BcFunction;

/*
 Opaque Fourier spectrum.
 */
typedef struct BcSpectrum BcSpectrum;

/*
 Result of the FKN computation.
 */
typedef struct BcFkn {
  double w1;
  uint32_t best_i;
  double coefficient;
  double distance;
  double bound;
} BcFkn;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failed call on this thread, or NULL. Valid until the
 next `bc_*` call on the same thread.
 */
const char *bc_last_error_message(void);

/*
 Sets the process-wide arity cap (at most 30).
 */
enum BcStatus bc_set_max_arity(uint32_t n);

/*
 Builds a function from `2^n` characters in {0,1}; character `i` is 1 when `f = -1` at point `i`.

 # Safety
 `bits` must be a nul-terminated string and `out` a writable pointer.
 */
enum BcStatus bc_function_from_bits(uint32_t n, const char *bits, struct BcFunction **out_fn);

/*
 Parses the `.bfn` text format.

 # Safety
 `bfn` must be a nul-terminated string and `out` a writable pointer.
 */
enum BcStatus bc_function_from_bfn(const char *bfn, struct BcFunction **out_fn);

/*
 Named constructors. `name` and the meaning of `a`, `b`:
 `dictator` (n, i), `parity` (n, subset mask), `maj` (n), `or` (n), `and` (n),
 `tribes` (width, count), `bl` (width).

 # Safety
 `name` must be a nul-terminated string and `out` a writable pointer.
 */
enum BcStatus bc_function_zoo(const char *name, uint32_t a, uint32_t b, struct BcFunction **out_fn);

/*
 # Safety
 `f` must be NULL or a handle from a `bc_function_*` constructor not yet freed.
 */
void bc_function_free(struct BcFunction *f);

/*
 Arity of `f`, or 0 for a NULL handle.

 # Safety
 `f` must be NULL or a live handle.
 */
uint32_t bc_function_arity(const struct BcFunction *f);

/*
 `f(x)` in {-1, 1}, where bit `j-1` of `point` is set when `x_j = -1`.

 # Safety
 `f` must be a live handle and `value` writable.
 */
enum BcStatus bc_function_evaluate(const struct BcFunction *f, uint64_t point, int8_t *value);

/*
 Truth table in `.bfn` format; release with `bc_string_free`.

 # Safety
 `f` must be a live handle and `out` writable.
 */
enum BcStatus bc_function_to_bfn(const struct BcFunction *f, char **out_str);

/*
 # Safety
 `s` must be NULL or a string returned by this library not yet freed.
 */
void bc_string_free(char *s);

/*
 # Safety
 `f` must be a live handle and `out` writable.
 */
enum BcStatus bc_function_spectrum(const struct BcFunction *f, struct BcSpectrum **out_spec);

/*
 # Safety
 `s` must be NULL or a handle from `bc_function_spectrum` not yet freed.
 */
void bc_spectrum_free(struct BcSpectrum *s);

/*
 # Safety
 `s` must be NULL or a live handle.
 */
uint32_t bc_spectrum_arity(const struct BcSpectrum *s);

/*
 The coefficient at subset `mask`.

 # Safety
 `s` must be a live handle and `value` writable.
 */
enum BcStatus bc_spectrum_get(const struct BcSpectrum *s, uint64_t mask, double *value);

/*
 Copies all `2^n` coefficients in mask order into `buf`.

 # Safety
 `s` must be a live handle and `buf` must hold `len` doubles.
 */
enum BcStatus bc_spectrum_copy(const struct BcSpectrum *s, double *buf, uintptr_t len);

/*
 `I_i(f)` for `1 <= i <= n`.

 # Safety
 `f` must be a live handle and `value` writable.
 */
enum BcStatus bc_influence(const struct BcFunction *f, uint32_t i, double *value);

/*
 # Safety
 `f` must be a live handle and `value` writable.
 */
enum BcStatus bc_total_influence(const struct BcFunction *f, double *value);

/*
 Fourier entropy and min-entropy, base 2. Either output may be NULL.

 # Safety
 `f` must be a live handle; non-NULL outputs must be writable.
 */
enum BcStatus bc_entropy(const struct BcFunction *f, double *entropy, double *min_entropy);

/*
 `H / I` (0 for constants).

 # Safety
 `f` must be a live handle and `value` writable.
 */
enum BcStatus bc_efi_ratio(const struct BcFunction *f, double *value);

/*
 # Safety
 `f` must be a live handle and `result` writable.
 */
enum BcStatus bc_fkn(const struct BcFunction *f, struct BcFkn *result);

/*
 `max_i I_i · n / (ln n · Var f)`.

 # Safety
 `f` must be a live handle and `value` writable.
 */
enum BcStatus bc_kkl_ratio(const struct BcFunction *f, double *value);

/*
 Greedy coalition towards `direction` (+1 or -1). Writes the chosen
 coordinates to `coalition` (capacity `cap`), their number to `len` and the
 final expectation to `final_expectation` (may be NULL). When `cap` is too
 small, `len` still receives the required size.

 # Safety
 `f` must be a live handle, `coalition` must hold `cap` values and `len` be writable.
 */
enum BcStatus bc_greedy_coalition(const struct BcFunction *f,
                                  double target,
                                  int32_t direction,
                                  uint32_t *coalition,
                                  uintptr_t cap,
                                  uintptr_t *len,
                                  double *final_expectation);

/*
 Runs a named check (`bonami`, `hyper`, `kkl`, ...) and returns the JSON report.
 `passed` receives whether every assertion held.

 # Safety
 `f` must be a live handle, `check` a nul-terminated string, outputs writable.
 */
enum BcStatus bc_verify_json(const struct BcFunction *f,
                             const char *check,
                             double tolerance,
                             bool *passed,
                             char **json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BOOLCUBE_H */
