#ifndef TSTRAT_H
#define TSTRAT_H

/* Generated by cbindgen from tstrat-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Classification of a morphism.
 */
typedef enum TsMonoClass {
  TS_MONO_CLASS_NOT_MONO = 0,
  TS_MONO_CLASS_ENTIRE = 1,
  TS_MONO_CLASS_REGULAR = 2,
  TS_MONO_CLASS_PLAIN_MONO = 3,
} TsMonoClass;

/**
 * Status codes mirroring the CLI exit contract.
 */
typedef enum TsStatus {
  TS_STATUS_PASS = 0,
  TS_STATUS_FAIL = 1,
  TS_STATUS_INDETERMINATE = 2,
  TS_STATUS_INPUT_ERROR = 3,
} TsStatus;

/**
 * Marking variants of the complicial simplex.
 */
typedef enum TsVariant {
  TS_VARIANT_PLAIN = 0,
  TS_VARIANT_PRIME = 1,
  TS_VARIANT_DOUBLE_PRIME = 2,
} TsVariant;

/**
 * An opaque morphism together with its endpoints.
 */
typedef struct TsMap TsMap;

/**
 * An opaque prestratified simplicial set.
 */
typedef struct TsObject TsObject;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the most recent failure on this thread. Borrowed; do not free.
 */
const char *ts_last_error(void);

/**
 * Frees a string returned by any `*_to_json` or report-producing call.
 *
 * # Safety
 * `s` must come from this library and not have been freed before.
 */
void ts_string_free(char *s);

/**
 * Parses an object document.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string.
 */
struct TsObject *ts_object_parse(const char *json);

/**
 * Serializes an object to its canonical document.
 *
 * # Safety
 * `h` must be a live handle from this library.
 */
char *ts_object_to_json(const struct TsObject *h);

/**
 * # Safety
 * `h` must be a live handle; it is consumed.
 */
void ts_object_free(struct TsObject *h);

/**
 * # Safety
 * `h` must be a live handle.
 */
uintptr_t ts_object_dim(const struct TsObject *h);

/**
 * # Safety
 * `h` must be a live handle.
 */
bool ts_object_is_stratified(const struct TsObject *h);

/**
 * Number of marked non-degenerate simplices.
 *
 * # Safety
 * `h` must be a live handle.
 */
uintptr_t ts_object_marked_count(const struct TsObject *h);

struct TsObject *ts_shape_delta(uintptr_t m);

struct TsObject *ts_shape_delta_t(uintptr_t m);

struct TsObject *ts_shape_sharp(uintptr_t m);

struct TsObject *ts_shape_delta3_eq(void);

struct TsObject *ts_shape_csimplex(uintptr_t k, uintptr_t m, enum TsVariant variant);

/**
 * The horn inclusion Λ^k[m] -> Δ^k[m].
 */
struct TsMap *ts_shape_horn(uintptr_t k, uintptr_t m);

/**
 * The saturation extension at index `l >= -1`.
 */
struct TsMap *ts_shape_saturation(intptr_t l);

/**
 * Parses a map document.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string.
 */
struct TsMap *ts_map_parse(const char *json);

/**
 * # Safety
 * `h` must be a live handle.
 */
char *ts_map_to_json(const struct TsMap *h);

/**
 * # Safety
 * `h` must be a live handle; it is consumed.
 */
void ts_map_free(struct TsMap *h);

/**
 * # Safety
 * `h` must be a live handle.
 */
enum TsMonoClass ts_map_classify(const struct TsMap *h);

/**
 * Source and target of a map, as fresh object handles.
 *
 * # Safety
 * `h` must be a live handle.
 */
struct TsObject *ts_map_source(const struct TsMap *h);

/**
 * # Safety
 * `h` must be a live handle.
 */
struct TsObject *ts_map_target(const struct TsMap *h);

/**
 * The reflection of an object into stratified ones.
 *
 * # Safety
 * `h` must be a live handle.
 */
struct TsObject *ts_object_reflect(const struct TsObject *h);

/**
 * Levelwise product.
 *
 * # Safety
 * `a` and `b` must be live handles.
 */
struct TsObject *ts_product(const struct TsObject *a, const struct TsObject *b);

/**
 * Join of stratified objects.
 *
 * # Safety
 * `a` and `b` must be live handles.
 */
struct TsObject *ts_join(const struct TsObject *a, const struct TsObject *b);

/**
 * Pushout of `f` along the monomorphism `i` (shared source); set `reflect`
 * for the pushout in stratified sets.
 *
 * # Safety
 * `i` and `f` must be live handles.
 */
struct TsObject *ts_pushout(const struct TsMap *i, const struct TsMap *f, bool reflect);

/**
 * Checks the right lifting property against all elementary anodyne
 * extensions within the bound, writing a JSON report to `report_out`
 * (free with [`ts_string_free`]).
 *
 * # Safety
 * `h` must be a live handle; `report_out` may be null.
 */
enum TsStatus ts_is_n_complicial(const struct TsObject *h,
                                 uintptr_t n,
                                 uintptr_t dim_bound,
                                 uint64_t budget,
                                 char **report_out);

/**
 * Replays the schedule of one pushout-product lemma; `lemma` is 1..=4.
 *
 * # Safety
 * `report_out` may be null.
 */
enum TsStatus ts_verify_lemma(uint32_t lemma,
                              uintptr_t n,
                              intptr_t l,
                              uintptr_t m,
                              uint64_t budget,
                              char **report_out);

/**
 * The Roberts–Street nerve of a category document.
 *
 * # Safety
 * `cat_json` must be a valid NUL-terminated string.
 */
struct TsObject *ts_nerve_rs(const char *cat_json, uintptr_t dim_bound);

/**
 * Runs the presentation oracle for tΔ.
 *
 * # Safety
 * `report_out` may be null.
 */
enum TsStatus ts_validate_presentation(uintptr_t max_degree,
                                       uintptr_t max_word_length,
                                       char **report_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TSTRAT_H */
