#ifndef SURFACE_CONJUGACY_H
#define SURFACE_CONJUGACY_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SgStatus {
  SG_STATUS_OK = 0,
  SG_STATUS_NULL_POINTER = 1,
  SG_STATUS_INVALID_UTF8 = 2,
  SG_STATUS_PARSE = 3,
  SG_STATUS_INVALID_GENUS = 4,
  SG_STATUS_GENUS_MISMATCH = 5,
  SG_STATUS_INVALID_PARAMETER = 6,
  SG_STATUS_BUDGET = 7,
  SG_STATUS_CONTRACT = 8,
  SG_STATUS_INTERNAL = 9,
  SG_STATUS_PANIC = 10,
} SgStatus;

typedef enum SgWordStyle {
  /**
   * Space-separated signed integers.
   */
  SG_WORD_STYLE_INT = 0,
  /**
   * `a..z` for generators, upper case for inverses.
   */
  SG_WORD_STYLE_ALPHA = 1,
} SgWordStyle;

typedef struct SgCertificate SgCertificate;

typedef struct SgGroup SgGroup;

typedef struct SgWord SgWord;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *sg_last_error_message(void);

/**
 * # Safety
 * `s` must come from this library or be null.
 */
void sg_string_free(char *s);

/**
 * # Safety
 * `out` must be a valid pointer.
 */
enum SgStatus sg_group_new(uint32_t genus, struct SgGroup **out);

/**
 * # Safety
 * `group` must come from [`sg_group_new`] or be null.
 */
void sg_group_free(struct SgGroup *group);

/**
 * Genus of `group`, or 0 for null.
 *
 * # Safety
 * `group` must be a live handle or null.
 */
uint32_t sg_group_genus(const struct SgGroup *group);

/**
 * # Safety
 * `text` must be a NUL-terminated string; pointers must be valid.
 */
enum SgStatus sg_word_parse(const struct SgGroup *group,
                            const char *text,
                            enum SgWordStyle style,
                            struct SgWord **out);

/**
 * Builds a word from `len` signed letters (`-i` is the inverse of `c_i`).
 *
 * # Safety
 * `letters` must point to `len` readable values (or be null when `len` is 0).
 */
enum SgStatus sg_word_from_letters(const struct SgGroup *group,
                                   const int32_t *letters,
                                   size_t len,
                                   struct SgWord **out);

/**
 * # Safety
 * `word` must come from this library or be null.
 */
void sg_word_free(struct SgWord *word);

/**
 * Length of `word`, or 0 for null.
 *
 * # Safety
 * `word` must be a live handle or null.
 */
size_t sg_word_len(const struct SgWord *word);

/**
 * Copies up to `cap` signed letters into `buf` and returns the word length.
 *
 * # Safety
 * `buf` must have room for `cap` values (or be null when `cap` is 0).
 */
size_t sg_word_letters(const struct SgWord *word, int32_t *buf, size_t cap);

/**
 * # Safety
 * Pointers must be valid; free the result with [`sg_string_free`].
 */
enum SgStatus sg_word_format(const struct SgWord *word, enum SgWordStyle style, char **out);

/**
 * # Safety
 * Pointers must be valid.
 */
enum SgStatus sg_normal_form(const struct SgGroup *group,
                             const struct SgWord *word,
                             struct SgWord **out);

/**
 * Conjugacy-class normal form.
 *
 * # Safety
 * Pointers must be valid.
 */
enum SgStatus sg_class_normal_form(const struct SgGroup *group,
                                   const struct SgWord *word,
                                   struct SgWord **out);

/**
 * # Safety
 * Pointers must be valid.
 */
enum SgStatus sg_dehn_equal(const struct SgGroup *group,
                            const struct SgWord *u,
                            const struct SgWord *v,
                            bool *out);

/**
 * # Safety
 * Pointers must be valid.
 */
enum SgStatus sg_is_conjugate(const struct SgGroup *group,
                              const struct SgWord *u,
                              const struct SgWord *v,
                              bool *out);

/**
 * Certificate for `w^-1 u w = v`. With `exact`, also runs the exact
 * conjugator-length search under `max_depth` / `max_states`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum SgStatus sg_conjugator(const struct SgGroup *group,
                            const struct SgWord *u,
                            const struct SgWord *v,
                            bool exact,
                            size_t max_depth,
                            size_t max_states,
                            struct SgCertificate **out);

/**
 * # Safety
 * `cert` must come from [`sg_conjugator`] or be null.
 */
void sg_certificate_free(struct SgCertificate *cert);

/**
 * # Safety
 * `cert` must be a live handle or null.
 */
bool sg_certificate_is_conjugate(const struct SgCertificate *cert);

/**
 * The conjugator, or null in `*out` when the words are not conjugate.
 *
 * # Safety
 * Pointers must be valid.
 */
enum SgStatus sg_certificate_conjugator(const struct SgCertificate *cert, struct SgWord **out);

/**
 * Conjugator length, or -1 when not conjugate.
 *
 * # Safety
 * `cert` must be a live handle or null.
 */
int64_t sg_certificate_conjugator_len(const struct SgCertificate *cert);

/**
 * `floor((|u| + |v|) / 2) + 8g - 1`, or 0 for null.
 *
 * # Safety
 * `cert` must be a live handle or null.
 */
size_t sg_certificate_bound(const struct SgCertificate *cert);

/**
 * # Safety
 * `cert` must be a live handle or null.
 */
size_t sg_certificate_r_sum(const struct SgCertificate *cert);

/**
 * Exact conjugator length, or -1 when unknown.
 *
 * # Safety
 * `cert` must be a live handle or null.
 */
int64_t sg_certificate_exact_cl(const struct SgCertificate *cert);

/**
 * # Safety
 * Pointers must be valid; free the result with [`sg_string_free`].
 */
enum SgStatus sg_certificate_to_json(const struct SgCertificate *cert, char **out);

/**
 * Breadth-first conjugator length; `*out` is -1 when the search is
 * exhausted before reaching `v`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum SgStatus sg_exact_cl(const struct SgGroup *group,
                          const struct SgWord *u,
                          const struct SgWord *v,
                          size_t max_depth,
                          size_t max_states,
                          int64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SURFACE_CONJUGACY_H */
