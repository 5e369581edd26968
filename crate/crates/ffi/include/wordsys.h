#ifndef WORDSYS_H
#define WORDSYS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum WsStatus {
  WS_STATUS_OK = 0,
  /**
   * A required pointer was null.
   */
  WS_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not UTF-8.
   */
  WS_STATUS_INVALID_UTF8 = 2,
  /**
   * A textual argument did not parse.
   */
  WS_STATUS_PARSE = 3,
  /**
   * The operation rejected its arguments.
   */
  WS_STATUS_DOMAIN = 4,
  /**
   * An internal panic was caught.
   */
  WS_STATUS_PANIC = 5,
} WsStatus;

/**
 * A finite code.
 */
typedef struct WsCode WsCode;

/**
 * A nonempty binary word.
 */
typedef struct WsWord WsWord;

/**
 * Readability flags of a code. `violating_shorter`/`violating_longer` are null when there
 * is no violating pair; otherwise the caller frees them with [`ws_string_free`].
 */
typedef struct WsCodeAnalysis {
  bool right_readable;
  bool left_readable;
  bool alphabet;
  bool expressive;
  char *violating_shorter;
  char *violating_longer;
} WsCodeAnalysis;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failing call on this thread; empty if none. Valid until the next
 * failing call on this thread; do not free.
 */
const char *ws_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void ws_string_free(char *s);

/**
 * Parses a word from its `0`/`1` text form.
 *
 * # Safety
 * `s` is a NUL-terminated string; `out` is writable.
 */
enum WsStatus ws_word_parse(const char *s, struct WsWord **out);

/**
 * Releases a word handle. Null is ignored.
 *
 * # Safety
 * `w` must come from this library and not have been freed.
 */
void ws_word_free(struct WsWord *w);

/**
 * Text form of a word; null if `w` is null.
 *
 * # Safety
 * `w` is a live handle or null.
 */
char *ws_word_to_string(const struct WsWord *w);

/**
 * Length in bits; 0 if `w` is null.
 *
 * # Safety
 * `w` is a live handle or null.
 */
size_t ws_word_len(const struct WsWord *w);

/**
 * Canonical index of a word.
 *
 * # Safety
 * `w` is a live handle; `out` is writable.
 */
enum WsStatus ws_word_index(const struct WsWord *w, uint64_t *out);

/**
 * Word at a canonical index (at least 1).
 *
 * # Safety
 * `out` is writable.
 */
enum WsStatus ws_word_from_index(uint64_t n, struct WsWord **out);

/**
 * Builds a code from a word list: one word per line, `#` comments and blank lines ignored.
 *
 * # Safety
 * `words` is a NUL-terminated string; `out` is writable.
 */
enum WsStatus ws_code_parse(const char *words, struct WsCode **out);

/**
 * Releases a code handle. Null is ignored.
 *
 * # Safety
 * `c` must come from this library and not have been freed.
 */
void ws_code_free(struct WsCode *c);

/**
 * # Safety
 * `c` is a live handle; `out` is writable.
 */
enum WsStatus ws_code_analyze(const struct WsCode *c, struct WsCodeAnalysis *out);

/**
 * Splits `w` into code members; the tokens are written space-separated.
 *
 * # Safety
 * `c` and `w` are live handles; `out` is writable.
 */
enum WsStatus ws_code_tokenize(const struct WsCode *c, const struct WsWord *w, char **out);

/**
 * Encodes a signed decimal integer over the alphabet `{x, y}`.
 *
 * # Safety
 * `z` is a NUL-terminated string; `x`, `y` are live handles; `out` is writable.
 */
enum WsStatus ws_int_encode(const char *z,
                            const struct WsWord *x,
                            const struct WsWord *y,
                            struct WsWord **out);

/**
 * Decodes an integer word; the result is written in decimal.
 *
 * # Safety
 * `w`, `x`, `y` are live handles; `out` is writable.
 */
enum WsStatus ws_int_decode(const struct WsWord *w,
                            const struct WsWord *x,
                            const struct WsWord *y,
                            char **out);

/**
 * Encodes a rational given as `p` or `p/q`.
 *
 * # Safety
 * `q` is a NUL-terminated string; `x`, `y` are live handles; `out` is writable.
 */
enum WsStatus ws_rat_encode(const char *q,
                            const struct WsWord *x,
                            const struct WsWord *y,
                            struct WsWord **out);

/**
 * Decodes a rational word; the result is written as `p/q` in lowest terms.
 *
 * # Safety
 * `w`, `x`, `y` are live handles; `out` is writable.
 */
enum WsStatus ws_rat_decode(const struct WsWord *w,
                            const struct WsWord *x,
                            const struct WsWord *y,
                            char **out);

/**
 * Rational bounds `lo < r <= hi` with `hi - lo <= 2^-k` for a builtin real
 * (`sqrt2`, `e-partial`, `rational:<p>/<q>`). Both bounds are written as `p/q`.
 *
 * # Safety
 * `name` is a NUL-terminated string; `lo` and `hi` are writable.
 */
enum WsStatus ws_real_approx(const char *name, uint32_t k, char **lo, char **hi);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WORDSYS_H */
