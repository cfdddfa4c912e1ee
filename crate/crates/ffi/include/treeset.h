#ifndef TREESET_H
#define TREESET_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TsStatus {
  TS_STATUS_OK = 0,
  TS_STATUS_NULL_ARGUMENT = 1,
  TS_STATUS_INVALID_UTF8 = 2,
  TS_STATUS_PARSE = 3,
  TS_STATUS_PRECONDITION = 4,
  TS_STATUS_INTERNAL = 5,
  TS_STATUS_PANIC = 6,
} TsStatus;

// Opaque truncated factor set.
typedef struct TsFactorSet TsFactorSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call on the same thread.
const char *ts_last_error(void);

// # Safety
// `s` must come from this library and not have been freed.
void ts_string_free(char *s);

// # Safety
// `set` must come from this library and not have been freed.
void ts_factor_set_free(struct TsFactorSet *set);

// Factors of length at most `depth` of a named preset.
//
// # Safety
// `name` must be a NUL-terminated string; `out` must be writable.
enum TsStatus ts_factor_set_from_preset(const char *name, size_t depth, struct TsFactorSet **out);

// Factors of the fixed point of `rules` (e.g. `a->ab; b->a`) from `seed`,
// or from the first letter when `seed` is null.
//
// # Safety
// `rules` and a non-null `seed` must be NUL-terminated; `out` must be writable.
enum TsStatus ts_factor_set_from_morphism(const char *rules,
                                          const char *seed,
                                          size_t depth,
                                          struct TsFactorSet **out);

// Factors of an interval exchange given in the text format of the CLI.
//
// # Safety
// `spec` must be NUL-terminated; `out` must be writable.
enum TsStatus ts_factor_set_from_iet(const char *spec, size_t depth, struct TsFactorSet **out);

// Rebuilds a set from the JSON written by [`ts_factor_set_to_json`].
//
// # Safety
// `json` must be NUL-terminated; `out` must be writable.
enum TsStatus ts_factor_set_from_json(const char *json, struct TsFactorSet **out);

// # Safety
// `set` must be a live handle; `out` must be writable.
enum TsStatus ts_factor_set_depth(const struct TsFactorSet *set, size_t *out);

// Number of words, the empty word included.
//
// # Safety
// `set` must be a live handle; `out` must be writable.
enum TsStatus ts_factor_set_len(const struct TsFactorSet *set, size_t *out);

// Number of words of length `n`.
//
// # Safety
// `set` must be a live handle; `out` must be writable.
enum TsStatus ts_factor_set_complexity(const struct TsFactorSet *set, size_t n, size_t *out);

// # Safety
// `set` must be a live handle; `word` NUL-terminated; `out` writable.
enum TsStatus ts_factor_set_contains(const struct TsFactorSet *set, const char *word, bool *out);

// Whether every extension graph of a word of length at most `up_to` is a tree.
//
// # Safety
// `set` must be a live handle; `out` must be writable.
enum TsStatus ts_factor_set_is_tree(const struct TsFactorSet *set, size_t up_to, bool *out);

// # Safety
// `set` must be a live handle; `out` must be writable.
enum TsStatus ts_factor_set_to_json(const struct TsFactorSet *set, char **out);

// Return words of `word` as JSON.
//
// # Safety
// `set` must be a live handle; `word` NUL-terminated; `out` writable.
enum TsStatus ts_return_words_json(const struct TsFactorSet *set, const char *word, char **out);

// Maximal bifix decoding of `set` by `coding` (e.g. `c->aa; d->ab; e->ba`).
//
// # Safety
// `set` must be a live handle; `coding` NUL-terminated; `out` writable.
enum TsStatus ts_decode(const struct TsFactorSet *set,
                        const char *coding,
                        struct TsFactorSet **out);

// Whether comma-separated `words` form a basis of the free group on
// `alphabet` (the letters used when null).
//
// # Safety
// `words` and a non-null `alphabet` must be NUL-terminated; `out` writable.
enum TsStatus ts_fg_is_basis(const char *words, const char *alphabet, bool *out);

// Index of the subgroup generated by comma-separated `words`; `0` when
// the index is infinite.
//
// # Safety
// `words` and a non-null `alphabet` must be NUL-terminated; `out` writable.
enum TsStatus ts_fg_index(const char *words, const char *alphabet, size_t *out);

// Elementary decomposition of a positive basis as a JSON step list.
// Fails with `Precondition` when the greedy reduction gets stuck.
//
// # Safety
// `words` and a non-null `alphabet` must be NUL-terminated; `out` writable.
enum TsStatus ts_tame_decompose_json(const char *words, const char *alphabet, char **out);

// Library version as a static string.
const char *ts_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TREESET_H */
