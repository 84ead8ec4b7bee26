#ifndef EFSYNTH_H
#define EFSYNTH_H

/* Generated by cbindgen from the efsynth-ffi crate; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes for every fallible entry point.
 */
typedef enum EfStatus {
  /**
   * The call succeeded.
   */
  EF_STATUS_OK = 0,
  /**
   * A required pointer argument was NULL.
   */
  EF_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  EF_STATUS_UTF8 = 2,
  /**
   * The input was rejected (bad sample, bad formula, unknown symbol,
   * undefined similarity, ...).
   */
  EF_STATUS_INVALID_INPUT = 3,
  /**
   * The sample is internally contradictory.
   */
  EF_STATUS_INCONSISTENT = 4,
  /**
   * A resource guard tripped before an answer was reached.
   */
  EF_STATUS_CAPACITY = 5,
} EfStatus;

/**
 * An owned sentence. Opaque.
 */
typedef struct EfFormula EfFormula;

/**
 * An owned classified sample. Opaque.
 */
typedef struct EfSample EfSample;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Description of the most recent failure on this thread, or NULL when no
 * call has failed yet. The pointer stays valid until the next failing
 * call on the same thread; do not free it.
 */
const char *ef_last_error(void);

/**
 * Parses a classified sample from text: one `+ string` or `- string` per
 * line, `#` comments, blank lines, and an optional `@alphabet SYMBOLS`
 * directive.
 *
 * # Safety
 * `text` must be NUL-terminated; `out` must be a valid pointer.
 */
enum EfStatus ef_sample_parse(const char *text, struct EfSample **out);

/**
 * Releases a sample handle. NULL is ignored.
 *
 * # Safety
 * `sample` must come from `ef_sample_parse` and not be freed twice.
 */
void ef_sample_free(struct EfSample *sample);

/**
 * Synthesizes a separating sentence of minimal quantifier rank. With
 * `minimize` the number of disjuncts is also minimized (exactly up to
 * `exact_limit` positive strings, greedily beyond).
 *
 * # Safety
 * `sample` must be a live handle; `out` must be a valid pointer.
 */
enum EfStatus ef_synthesize(const struct EfSample *sample,
                            bool minimize,
                            uintptr_t exact_limit,
                            struct EfFormula **out);

/**
 * Deserializes a sentence from its JSON form.
 *
 * # Safety
 * `json` must be NUL-terminated; `out` must be a valid pointer.
 */
enum EfStatus ef_formula_from_json(const char *json, struct EfFormula **out);

/**
 * Serializes a sentence to JSON. The caller frees the string with
 * `ef_string_free`.
 *
 * # Safety
 * `formula` must be a live handle; `out` must be a valid pointer.
 */
enum EfStatus ef_formula_to_json(const struct EfFormula *formula, char **out);

/**
 * Renders a sentence in human-readable form; with `core` it is first
 * expanded into plain first-order syntax. The caller frees the string
 * with `ef_string_free`.
 *
 * # Safety
 * `formula` must be a live handle; `out` must be a valid pointer.
 */
enum EfStatus ef_formula_render(const struct EfFormula *formula, bool core, char **out);

/**
 * Quantifier rank of a sentence.
 *
 * # Safety
 * `formula` must be a live handle.
 */
uint32_t ef_formula_rank(const struct EfFormula *formula);

/**
 * Releases a formula handle. NULL is ignored.
 *
 * # Safety
 * `formula` must come from this library and not be freed twice.
 */
void ef_formula_free(struct EfFormula *formula);

/**
 * Evaluates a sentence on a string; writes the truth value to `out`.
 *
 * # Safety
 * `text` must be NUL-terminated; `formula` must be a live handle; `out`
 * must be a valid pointer.
 */
enum EfStatus ef_eval(const char *text, const struct EfFormula *formula, bool *out);

/**
 * Checks a sentence against a sample; writes whether every string is
 * classified correctly to `out`.
 *
 * # Safety
 * `sample` and `formula` must be live handles; `out` must be valid.
 */
enum EfStatus ef_check(const struct EfSample *sample, const struct EfFormula *formula, bool *out);

/**
 * Similarity of two distinct strings: the number of game rounds after
 * which the Spoiler first wins. Fails on identical strings, where no
 * round count separates them.
 *
 * # Safety
 * `u` and `v` must be NUL-terminated; `out` must be a valid pointer.
 */
enum EfStatus ef_efsim(const char *u, const char *v, uint32_t *out);

/**
 * Releases a string produced by this library. NULL is ignored.
 *
 * # Safety
 * `text` must come from this library and not be freed twice.
 */
void ef_string_free(char *text);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EFSYNTH_H */
