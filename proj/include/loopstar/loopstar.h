/* SPDX-License-Identifier: Apache-2.0 */
#ifndef LOOPSTAR_LOOPSTAR_H
#define LOOPSTAR_LOOPSTAR_H

#include <stddef.h>
#include <stdint.h>

#if defined(LOOPSTAR_BUILDING)
#define LS_API __attribute__((visibility("default")))
#else
#define LS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Every call returns LS_OK or an error code; the message of the most recent
 * failure on the calling thread is available from ls_last_error(). Strings
 * returned through char** out-parameters are owned by the caller and must be
 * released with ls_string_free(). */
typedef enum ls_status {
  LS_OK = 0,
  LS_ERR_INVALID_ARGUMENT = 1,
  LS_ERR_PARSE = 2,
  LS_ERR_VALIDATION = 3,
  LS_ERR_TRANSVERSALITY = 4,
  LS_ERR_UNSUPPORTED_GROUP = 5,
  LS_ERR_MISSING_ARC = 6,
  LS_ERR_IO = 7,
  LS_ERR_INTERNAL = 8
} ls_status;

typedef enum ls_group_kind {
  LS_GROUP_SU2 = 0,
  LS_GROUP_SL2R = 1,
  LS_GROUP_SL2C = 2,
  LS_GROUP_GLN = 3,
  LS_GROUP_UN = 4
} ls_group_kind;

typedef struct ls_group {
  ls_group_kind kind;
  int n;
} ls_group;

typedef enum ls_crossing { LS_OVER = 0, LS_UNDER = 1 } ls_crossing;
typedef enum ls_format { LS_FORMAT_JSON = 0, LS_FORMAT_TEXT = 1 } ls_format;

typedef struct ls_diagram ls_diagram;
/* A formal sum of Wilson-loop monomials, with either exact series
 * coefficients in h or numeric coefficients at a fixed beta. */
typedef struct ls_sum ls_sum;

LS_API const char* ls_last_error(void);
LS_API const char* ls_status_name(ls_status status);
LS_API void ls_string_free(char* s);

/* "su2", "sl2r", "sl2c", "gln", "un"; n is ignored for the rank-2 kinds. */
LS_API ls_status ls_group_parse(const char* name, int n, ls_group* out);

LS_API ls_status ls_diagram_parse(const char* text, ls_diagram** out);
LS_API ls_status ls_diagram_load(const char* path, ls_diagram** out);
LS_API void ls_diagram_free(ls_diagram* d);
LS_API ls_status ls_diagram_render(const ls_diagram* d, char** out);
LS_API ls_status ls_diagram_curve_count(const ls_diagram* d, size_t* out);
LS_API ls_status ls_diagram_curve_id(const ls_diagram* d, size_t index, const char** out);
LS_API ls_status ls_diagram_curve_level(const ls_diagram* d, size_t index, int* out);

/* The monomial W_{c_1} ... W_{c_count} with coefficient 1 (count 0 gives
 * the constant 1). */
LS_API ls_status ls_sum_monomial(const ls_diagram* d, const char* const* curve_ids, size_t count, int order,
                                 ls_sum** out);
LS_API ls_status ls_sum_from_json(const ls_diagram* d, const char* json, int order, ls_sum** out);
LS_API void ls_sum_free(ls_sum* s);
LS_API ls_status ls_sum_size(const ls_sum* s, size_t* out);
LS_API ls_status ls_sum_is_numeric(const ls_sum* s, int* out);
LS_API ls_status ls_sum_format(const ls_diagram* d, const ls_sum* s, ls_format format, char** out);
/* Series coefficients evaluated as truncated polynomials at h = 2 beta. */
LS_API ls_status ls_sum_eval_coeffs(const ls_sum* s, double beta, ls_sum** out);
/* Value of the sum under an arc assignment given as JSON
 * {"group": ..., "n": ..., "arcs": {"C.0": [[re, im], ...], ...}}. */
LS_API ls_status ls_sum_evaluate(const ls_diagram* d, const ls_sum* s, const char* assignment_json, double beta,
                                 double* re, double* im);
/* A random assignment for the diagram's arcs as JSON. */
LS_API ls_status ls_random_assignment(const ls_diagram* d, ls_group group, uint64_t seed, char** out);

LS_API ls_status ls_bracket(const ls_diagram* d, const ls_sum* f, const ls_sum* g, ls_group group, ls_sum** out);
LS_API ls_status ls_star(const ls_diagram* d, const ls_sum* f, const ls_sum* g, ls_group group, int order,
                         ls_sum** out);
/* Star product with closed-form coefficients at beta; inputs are evaluated
 * at h = 2 beta first. */
LS_API ls_status ls_star_at(const ls_diagram* d, const ls_sum* f, const ls_sum* g, ls_group group, double beta,
                            ls_sum** out);
/* Expectation of the product of all curves at their declared levels. */
LS_API ls_status ls_expect(const ls_diagram* d, ls_group group, int order, ls_sum** out);
LS_API ls_status ls_expect_at(const ls_diagram* d, ls_group group, double beta, ls_sum** out);

/* Crossing coefficient table. With evaluate != 0 the closed forms are also
 * evaluated at beta. */
LS_API ls_status ls_coeffs(ls_group group, ls_crossing type, int order, int evaluate, double beta,
                           ls_format format, char** out);

/* Runs a property suite ("all" for every suite); writes the report and the
 * number of failed checks. */
LS_API ls_status ls_check(const char* suite, uint64_t seed, int order, ls_format format, char** out,
                          int* failures);
/* Newline-separated suite names. */
LS_API ls_status ls_check_suites(char** out);

#ifdef __cplusplus
}
#endif

#endif
