#ifndef ALOOP_H
#define ALOOP_H

/* C interface to the loop workbench. Handles are opaque and owned by the
 * caller; every function returns an aloop_status and, on failure, leaves a
 * message in aloop_last_error() for the calling thread. Strings returned
 * through char** out-parameters are freed with aloop_string_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ALOOP_API __declspec(dllexport)
#else
#define ALOOP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum aloop_status {
  ALOOP_OK = 0,
  ALOOP_E_INVALID_ARGUMENT = 1,
  ALOOP_E_PARSE = 2,
  ALOOP_E_IO = 3,
  ALOOP_E_JACOBI = 4,
  ALOOP_E_W1 = 5,
  ALOOP_E_LOOP_AXIOM = 6,
  ALOOP_E_UNSUPPORTED = 7,
  ALOOP_E_CONSTRUCTION = 8, /* beta / Phi / field preconditions */
  ALOOP_E_LIMIT = 9,        /* size or budget limits */
  ALOOP_E_INTERNAL = 10
} aloop_status;

typedef struct aloop_lie aloop_lie;
typedef struct aloop_loop aloop_loop;

ALOOP_API const char* aloop_last_error(void);
/* Name of the underlying error class, e.g. "JacobiError". */
ALOOP_API const char* aloop_last_error_kind(void);
ALOOP_API void aloop_string_free(char* s);

/* Lie algebras over F2 */
ALOOP_API aloop_status aloop_lie_parse(const char* lief2_json, aloop_lie** out);
ALOOP_API aloop_status aloop_lie_read(const char* path, aloop_lie** out);
/* kind: "abelian" (dim), "heisenberg", "free" (gens, nil_class). */
ALOOP_API aloop_status aloop_lie_make(const char* kind, size_t dim, size_t gens, size_t nil_class, aloop_lie** out);
ALOOP_API void aloop_lie_free(aloop_lie* l);
ALOOP_API size_t aloop_lie_dim(const aloop_lie* l);
ALOOP_API aloop_status aloop_lie_validate(const aloop_lie* l);
ALOOP_API aloop_status aloop_lie_props_json(const aloop_lie* l, size_t budget_order, char** out);
ALOOP_API aloop_status aloop_lie_to_text(const aloop_lie* l, char** out);
ALOOP_API aloop_status aloop_lie_to_loop(const aloop_lie* l, aloop_loop** out);

/* Finite loops */
ALOOP_API aloop_status aloop_loop_parse(const char* cayley_text, aloop_loop** out);
ALOOP_API aloop_status aloop_loop_read(const char* path, aloop_loop** out);
ALOOP_API void aloop_loop_free(aloop_loop* q);
ALOOP_API size_t aloop_loop_order(const aloop_loop* q);
ALOOP_API uint16_t aloop_loop_mul(const aloop_loop* q, uint16_t a, uint16_t b);
ALOOP_API aloop_status aloop_loop_to_text(const aloop_loop* q, char** out);
/* automorphic receives 1/0; with_split runs the nuclear split search. */
ALOOP_API aloop_status aloop_loop_analyze_json(const aloop_loop* q, int with_split, int* automorphic, char** out);
/* found receives 1 when a nuclear splitting exists. */
ALOOP_API aloop_status aloop_loop_split_json(const aloop_loop* q, int* found, char** out);

/* Constructions */
ALOOP_API aloop_status aloop_construct_beta(const char* beta_json, aloop_loop** out);
/* delta: h_dim field elements, each < 2^m. */
ALOOP_API aloop_status aloop_construct_example1(unsigned m, const uint32_t* delta, size_t h_dim, aloop_loop** out);
ALOOP_API aloop_status aloop_construct_example2(unsigned m, unsigned d, aloop_loop** out);
/* input_json may be NULL, in which case a seeded random X of the given shape is used. */
ALOOP_API aloop_status aloop_construct_horajed(const char* input_json, size_t k_dim, size_t h_dim, uint64_t seed,
                                               aloop_loop** out, char** report_json);

/* Scans. samples == 0 selects the exhaustive mode; jobs == 0 uses all cores.
 * found receives the number of counterexamples or witnesses. */
ALOOP_API aloop_status aloop_scan_problem1_json(size_t dim, uint64_t samples, uint64_t seed, size_t jobs,
                                                size_t budget_order, size_t* found, char** out);
ALOOP_API aloop_status aloop_scan_nonsplit_json(size_t dim, uint64_t samples, uint64_t seed, size_t jobs,
                                                size_t* found, char** out);

#ifdef __cplusplus
}
#endif

#endif
