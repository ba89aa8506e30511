#ifndef LOGKNOT_H
#define LOGKNOT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes. The numeric values of the knot-specific failures match the CLI exit codes.
typedef enum LogknotStatus {
  LOGKNOT_STATUS_OK = 0,
  LOGKNOT_STATUS_FAILURE = 1,
  LOGKNOT_STATUS_PARSE = 2,
  LOGKNOT_STATUS_MULTI_COMPONENT = 3,
  LOGKNOT_STATUS_CAP_EXCEEDED = 4,
  LOGKNOT_STATUS_NULL_POINTER = 5,
  LOGKNOT_STATUS_PANIC = 6,
} LogknotStatus;

// Selects a family of central coefficients.
typedef enum LogknotCoefficient {
  // `a_s`, `0 <= s <= p`.
  LOGKNOT_COEFFICIENT_A = 0,
  // `b_s^+`, `1 <= s <= p-1`.
  LOGKNOT_COEFFICIENT_B_PLUS = 1,
  // `b_s^-`, `1 <= s <= p-1`.
  LOGKNOT_COEFFICIENT_B_MINUS = 2,
} LogknotCoefficient;

// Decomposition of the universal invariant of a knot.
typedef struct LogknotDecomposition LogknotDecomposition;

// A framed braid whose closure is a knot.
typedef struct LogknotKnot LogknotKnot;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or NULL. Valid until the next call.
const char *logknot_last_error(void);

// Library version as a static NUL-terminated string.
const char *logknot_version(void);

// Knot from a preset name such as `"trefoil"`.
//
// # Safety
// `name` must be a NUL-terminated string and `out` a writable pointer.
enum LogknotStatus logknot_knot_from_preset(const char *name, struct LogknotKnot **out);

// Knot from a braid word like `"s1 S2 s1 S2"` on `strands` strands.
//
// # Safety
// `braid` must be a NUL-terminated string and `out` a writable pointer.
enum LogknotStatus logknot_knot_parse(const char *braid, size_t strands, struct LogknotKnot **out);

// # Safety
// `knot` must come from this library and not be used afterwards. NULL is ignored.
void logknot_knot_free(struct LogknotKnot *knot);

// Blackboard framing (writhe plus twists).
//
// # Safety
// `knot` must be a live handle and `out` a writable pointer.
enum LogknotStatus logknot_knot_framing(const struct LogknotKnot *knot, int64_t *out);

// Exact decomposition at `q = exp(πi/p)`. `cap` of 0 means the default cap.
//
// # Safety
// `knot` must be a live handle and `out` a writable pointer.
enum LogknotStatus logknot_decompose(const struct LogknotKnot *knot,
                                     uint32_t p,
                                     bool framing_correct,
                                     size_t cap,
                                     struct LogknotDecomposition **out);

// # Safety
// `dec` must come from this library and not be used afterwards. NULL is ignored.
void logknot_decomposition_free(struct LogknotDecomposition *dec);

// Double-precision value of one coefficient.
//
// # Safety
// `dec` must be a live handle; `re` and `im` writable pointers.
enum LogknotStatus logknot_decomposition_coefficient(const struct LogknotDecomposition *dec,
                                                     enum LogknotCoefficient kind,
                                                     uint32_t s,
                                                     double *re,
                                                     double *im);

// JSON document with exact and approximate coefficients. Free with [`logknot_string_free`].
//
// # Safety
// `dec` must be a live handle and `out` a writable pointer.
enum LogknotStatus logknot_decomposition_to_json(const struct LogknotDecomposition *dec,
                                                 char **out);

// # Safety
// `s` must come from this library and not be used afterwards. NULL is ignored.
void logknot_string_free(char *s);

// `O_λ` for the knot at `λ = re + i·im`. `precision` of 0 means the default bit precision.
//
// # Safety
// `knot` must be a live handle; `out_re` and `out_im` writable pointers.
enum LogknotStatus logknot_colored_alexander(const struct LogknotKnot *knot,
                                             uint32_t p,
                                             double re,
                                             double im,
                                             size_t precision,
                                             double *out_re,
                                             double *out_im);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LOGKNOT_H */
