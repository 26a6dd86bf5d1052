#ifndef ESLI_H
#define ESLI_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Flag bits reported by [`esli_semigroup_flags`].
 */
#define ESLI_FLAG_REGULAR 1

#define ESLI_FLAG_INVERSE (1 << 1)

#define ESLI_FLAG_ORTHODOX (1 << 2)

#define ESLI_FLAG_E_SOLID (1 << 3)

#define ESLI_FLAG_LOCALLY_INVERSE (1 << 4)

#define ESLI_FLAG_COMPLETELY_SIMPLE (1 << 5)

#define ESLI_FLAG_GROUP (1 << 6)

#define ESLI_FLAG_BAND (1 << 7)

/*
 Result codes.
 */
typedef enum EsliStatus {
  ESLI_STATUS_OK = 0,
  ESLI_STATUS_NULL_POINTER = 1,
  ESLI_STATUS_INVALID_UTF8 = 2,
  ESLI_STATUS_PARSE = 3,
  /*
   The input violates a precondition of the operation.
   */
  ESLI_STATUS_PRECONDITION = 4,
  /*
   A check ran and found a counterexample.
   */
  ESLI_STATUS_VERDICT_FAILED = 5,
  /*
   The output buffer is too small; the required size was written.
   */
  ESLI_STATUS_BUFFER_TOO_SMALL = 6,
  ESLI_STATUS_OUT_OF_RANGE = 7,
  ESLI_STATUS_INTERNAL = 8,
} EsliStatus;

/*
 Which inverse serves as the distinguished inverse of each element.
 */
typedef enum EsliDagger {
  ESLI_DAGGER_LOWEST = 0,
  ESLI_DAGGER_HIGHEST = 1,
} EsliDagger;

/*
 Opaque extension context: a semigroup with a congruence and its derived semigroupoid.
 */
typedef struct EsliContext EsliContext;

/*
 Opaque finite semigroup.
 */
typedef struct EsliSemigroup EsliSemigroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Copy the last error message of this thread into `buf` (see [`esli_term_reduce`] for
 the buffer convention).

 # Safety
 `len` must be valid; `buf` must hold `*len` bytes or be null.
 */
enum EsliStatus esli_last_error(char *buf, size_t *len);

/*
 The library version as a static NUL-terminated string.
 */
const char *esli_version(void);

/*
 Build a semigroup from a row-major Cayley table of `order * order` entries.

 # Safety
 `table` must point to `order * order` values and `out` must be writable.
 */
enum EsliStatus esli_semigroup_from_table(size_t order,
                                          const size_t *table,
                                          struct EsliSemigroup **out);

/*
 Parse a `cayley-table v1` document.

 # Safety
 `text` must be a NUL-terminated string and `out` writable.
 */
enum EsliStatus esli_semigroup_parse(const char *text, struct EsliSemigroup **out);

/*
 One of the built-in small semigroups, such as `"B2"` or `"rect2x2"`.

 # Safety
 `name` must be a NUL-terminated string and `out` writable.
 */
enum EsliStatus esli_semigroup_named(const char *name, struct EsliSemigroup **out);

/*
 # Safety
 `s` must come from this library and not be used afterwards. Null is ignored.
 */
void esli_semigroup_free(struct EsliSemigroup *s);

/*
 # Safety
 `s` must be a live handle and `out` writable.
 */
enum EsliStatus esli_semigroup_order(const struct EsliSemigroup *s, size_t *out);

/*
 # Safety
 `s` must be a live handle and `out` writable.
 */
enum EsliStatus esli_semigroup_mul(const struct EsliSemigroup *s, size_t a, size_t b, size_t *out);

/*
 Structural flags as a bit set of the `ESLI_FLAG_*` constants.

 # Safety
 `s` must be a live handle and `out` writable.
 */
enum EsliStatus esli_semigroup_flags(const struct EsliSemigroup *s, uint32_t *out);

/*
 Class labels of the least inverse congruence, one per element, written to
 `labels[0..order]`.

 # Safety
 `s` must be a live handle and `labels` must hold `len` values.
 */
enum EsliStatus esli_least_inverse(const struct EsliSemigroup *s, size_t *labels, size_t len);

/*
 Build an extension context. With `labels` null the least inverse congruence is used;
 otherwise `labels[0..order]` gives the congruence classes.

 # Safety
 `s` must be a live handle, `labels` null or holding `order` values, `out` writable.
 */
enum EsliStatus esli_context_new(const struct EsliSemigroup *s,
                                 const size_t *labels,
                                 enum EsliDagger dagger,
                                 struct EsliContext **out);

/*
 # Safety
 `c` must come from this library and not be used afterwards. Null is ignored.
 */
void esli_context_free(struct EsliContext *c);

/*
 Number of arrows and of stable arrows of the derived semigroupoid.

 # Safety
 `c` must be a live handle and the outputs writable.
 */
enum EsliStatus esli_context_arrows(const struct EsliContext *c, size_t *arrows, size_t *stable);

/*
 Run the structural checks on stable arrows and the hat map. `*failures` receives the
 number of failing cases; the status is `VerdictFailed` when it is nonzero.

 # Safety
 `c` must be a live handle and `failures` writable.
 */
enum EsliStatus esli_hat_check(const struct EsliContext *c, size_t *failures);

/*
 Lift random derivations and check the embedding invariant. `*steps` receives the
 number of lifted steps. On failure the first witness is available from
 [`esli_last_error`].

 # Safety
 `c` must be a live handle and `steps` writable.
 */
enum EsliStatus esli_embed_verify(const struct EsliContext *c,
                                  uint64_t seed,
                                  size_t trials,
                                  size_t steps_per_trial,
                                  size_t max_len,
                                  size_t *steps);

/*
 Reduce a term such as `"x(y^x)"` to its normal form. `*len` is the capacity of `buf`
 on entry and the size needed (including the NUL) on exit; pass a null `buf` to query
 the size.

 # Safety
 `term` must be NUL-terminated, `len` valid, and `buf` null or holding `*len` bytes.
 */
enum EsliStatus esli_term_reduce(const char *term, char *buf, size_t *len);

/*
 Decide whether two terms are equal in the free object; `*equal` is 1 or 0.

 # Safety
 `u`, `v` must be NUL-terminated and `equal` writable.
 */
enum EsliStatus esli_term_equal(const char *u, const char *v, int32_t *equal);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ESLI_H */
