/* C interface to the qfock library: q-deformed Fock space operators, exact
 * vacuum expectations, operator norms and the mixing/verification harness.
 *
 * Every function returns a qf_status. On failure, qf_last_error() returns a
 * message for the calling thread, valid until its next qfock call. Objects
 * returned through out-pointers are owned by the caller and released with
 * the matching *_free function. */
#ifndef QFOCK_QFOCK_H
#define QFOCK_QFOCK_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(QFOCK_BUILDING)
#    define QF_API __declspec(dllexport)
#  else
#    define QF_API __declspec(dllimport)
#  endif
#else
#  define QF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qf_status {
  QF_OK = 0,
  QF_ERR_INVALID_ARGUMENT = 1,
  QF_ERR_PARSE = 2,
  QF_ERR_DOMAIN = 3,
  QF_ERR_SIZE = 4,
  QF_ERR_CONDITIONING = 5,
  QF_ERR_PRECONDITION = 6,
  QF_ERR_WINDOW = 7,
  QF_ERR_INTERNAL = 99
} qf_status;

typedef enum qf_seq_kind { QF_SEQ_ARITHMETIC = 0, QF_SEQ_RANDOM = 1 } qf_seq_kind;
typedef enum qf_format { QF_FORMAT_CSV = 0, QF_FORMAT_JSON = 1 } qf_format;
typedef enum qf_norm_method { QF_NORM_EXACT_EIGEN = 0, QF_NORM_POWER_ITERATION = 1 } qf_norm_method;

typedef struct qf_config {
  double q;
  int window_lo;
  int window_hi;
  int max_level;
  int nmax;
  qf_seq_kind seq_kind;
  uint64_t seed;
} qf_config;

typedef struct qf_norm_report {
  double value;
  qf_norm_method method;
  double residual;
  int levels_used;
} qf_norm_report;

typedef struct qf_text qf_text;   /* owned UTF-8 string */
typedef struct qf_expr qf_expr;   /* parsed operator expression */
typedef struct qf_fock qf_fock;   /* truncated Fock basis */
typedef struct qf_op qf_op;       /* operator matrix on a fock at fixed q */

QF_API const char* qf_version(void);
QF_API const char* qf_last_error(void);
QF_API const char* qf_status_name(qf_status status);

/* q = 0.5, window 0:2, max level 3, nmax 16, arithmetic, seed 1. */
QF_API void qf_config_default(qf_config* config);

QF_API const char* qf_text_data(const qf_text* text);
QF_API size_t qf_text_size(const qf_text* text);
QF_API void qf_text_free(qf_text* text);

QF_API qf_status qf_expr_parse(const char* source, qf_expr** out);
QF_API void qf_expr_free(qf_expr* expr);
/* Canonical string; reparses to an equal expression. */
QF_API qf_status qf_expr_canonical(const qf_expr* expr, qf_text** out);
/* Normal-ordered form, e.g. "1 + q a+(0) a(0)". */
QF_API qf_status qf_expr_normal_form(const qf_expr* expr, qf_text** out);

/* Vacuum expectation as a polynomial string and its value at q. */
QF_API qf_status qf_expect(const qf_expr* expr, double q, qf_text** poly, double* value);

QF_API qf_status qf_fock_create(int window_lo, int window_hi, int max_level, qf_fock** out);
QF_API void qf_fock_free(qf_fock* fock);
QF_API size_t qf_fock_size(const qf_fock* fock);
/* JSON array of Gram blocks with exact polynomial entries. */
QF_API qf_status qf_fock_gram_json(const qf_fock* fock, qf_text** out);
/* Smallest eigenvalue over the Gram blocks evaluated at q. */
QF_API qf_status qf_fock_min_gram_eigenvalue(const qf_fock* fock, double q, double* out);

QF_API qf_status qf_op_from_expr(const qf_fock* fock, const qf_expr* expr, double q, qf_op** out);
QF_API void qf_op_free(qf_op* op);
QF_API qf_status qf_op_norm(const qf_op* op, qf_norm_report* out);
/* Matrix triplets grouped per (source level, target level). */
QF_API qf_status qf_op_json(const qf_op* op, qf_text** out);
/* <X Ω, Ω>_q computed from the operator matrix. */
QF_API qf_status qf_op_vacuum_expectation(const qf_op* op, double* out);

/* Cesàro decay rows for a single-monomial expression; *violations counts
 * rows with norm > bound + 1e-8. */
QF_API qf_status qf_mixing(const qf_expr* expr, const qf_config* config, qf_format format, qf_text** out,
                           int* violations);

/* All invariant suites; *failures counts failing suites. A nonzero
 * inject_gram_fault corrupts one Gram entry first (test hook). */
QF_API qf_status qf_verify(const qf_config* config, int inject_gram_fault, qf_text** report, int* failures);

#ifdef __cplusplus
}
#endif

#endif /* QFOCK_QFOCK_H */
