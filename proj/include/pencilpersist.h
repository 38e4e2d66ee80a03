/*
 * pencilpersist — eigenvalue-persistence analysis for Hermitian matrix
 * families H(t) = H0 + t V.
 *
 * C interface to the shared library. All handles are opaque; every function
 * that can fail returns a pp_status, with a thread-local message available
 * through pp_last_error(). Matrices are dense complex and square; raw buffers
 * are row-major with interleaved [re, im] doubles (2*n*n values).
 */

#ifndef PENCILPERSIST_H
#define PENCILPERSIST_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PP_API __declspec(dllexport)
#elif defined(__GNUC__)
#define PP_API __attribute__((visibility("default")))
#else
#define PP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pp_status {
  PP_OK = 0,
  PP_ERR_INTERNAL = 1,         /* unexpected failure */
  PP_ERR_INCONSISTENT = 2,     /* a structural consistency check failed */
  PP_ERR_INVALID_INPUT = 3,    /* validation error (bad matrix, bad id, ...) */
  PP_ERR_NO_CONVERGENCE = 4,   /* eigensolver iteration cap exceeded */
  PP_ERR_SEARCH_EXHAUSTED = 5, /* randomized search found nothing in budget */
} pp_status;

/* Classification of the exceptional coupling set {t : pencil singular}. */
typedef enum pp_kind {
  PP_KIND_EMPTY = 0,
  PP_KIND_FINITE = 1,
  PP_KIND_ALL_COMPLEX = 2,
} pp_kind;

typedef struct pp_tolerances {
  double rank;      /* relative rank / pivot threshold */
  double eig;       /* eigenresidual and PSD-clamping threshold */
  double herm;      /* Hermitian-symmetry gate */
  double zero_poly; /* identically-zero-polynomial threshold */
  double real;      /* |Im t| below which t counts as real */
  double cluster;   /* root-clustering radius */
} pp_tolerances;

typedef struct pp_matrix pp_matrix;
typedef struct pp_pencil pp_pencil;
typedef struct pp_excset pp_excset;
typedef struct pp_bs pp_bs;
typedef struct pp_report pp_report;
typedef struct pp_hunt pp_hunt;

PP_API const char* pp_version(void);
PP_API const char* pp_status_name(pp_status status);

/* Message for the most recent failing call on this thread ("" if none). */
PP_API const char* pp_last_error(void);

PP_API pp_tolerances pp_tolerances_default(void);

/* Defaults overlaid with PENCIL_PERSIST_TOL_{RANK,EIG,HERM,ZERO_POLY,REAL,
 * CLUSTER}. Fails on unparsable or out-of-range values. */
PP_API pp_status pp_tolerances_from_env(pp_tolerances* out);

/* ---- matrices -------------------------------------------------------- */

PP_API pp_status pp_matrix_create(size_t n, const double* interleaved,
                                  pp_matrix** out);
PP_API pp_status pp_matrix_parse_json(const char* text, pp_matrix** out);
PP_API pp_status pp_matrix_read_file(const char* path, pp_matrix** out);
PP_API size_t pp_matrix_dim(const pp_matrix* m);
PP_API pp_status pp_matrix_get(const pp_matrix* m, size_t row, size_t col,
                               double* re, double* im);
/* Serializes to the canonical {"n": ..., "entries": [[re, im], ...]} form;
 * free the string with pp_string_free. */
PP_API pp_status pp_matrix_to_json(const pp_matrix* m, char** out);
PP_API void pp_matrix_free(pp_matrix* m);
PP_API void pp_string_free(char* s);

/* ---- pencils ---------------------------------------------------------- */

PP_API pp_status pp_pencil_create(const pp_matrix* a, const pp_matrix* b,
                                  pp_pencil** out);
/* A = lambda0 I - H0, B = V; requires Hermitian inputs. */
PP_API pp_status pp_pencil_from_eigenproblem(const pp_matrix* h0,
                                             const pp_matrix* v,
                                             double lambda0,
                                             const pp_tolerances* tol,
                                             pp_pencil** out);
PP_API size_t pp_pencil_dim(const pp_pencil* p);
/* Coefficients of det(A - tB), ascending powers; caller provides space for
 * 2*(n+1) doubles (interleaved re/im). identically_zero may be NULL. */
PP_API pp_status pp_pencil_char_poly(const pp_pencil* p,
                                     const pp_tolerances* tol, double* coeffs,
                                     int* identically_zero);
PP_API pp_status pp_pencil_exceptional_set(const pp_pencil* p,
                                           const pp_tolerances* tol,
                                           pp_excset** out);
PP_API pp_status pp_pencil_generic_kernel_dim(const pp_pencil* p,
                                              const pp_tolerances* tol,
                                              uint64_t seed, size_t* out);
PP_API pp_status pp_pencil_kernel_dim(const pp_pencil* p, double t_re,
                                      double t_im, const pp_tolerances* tol,
                                      size_t* out);
/* index-th orthonormal kernel vector of A - tB into 2n doubles. */
PP_API pp_status pp_pencil_kernel_vector(const pp_pencil* p, double t_re,
                                         double t_im,
                                         const pp_tolerances* tol,
                                         size_t index, double* interleaved);
PP_API void pp_pencil_free(pp_pencil* p);

PP_API pp_kind pp_excset_kind(const pp_excset* s);
PP_API size_t pp_excset_root_count(const pp_excset* s);
PP_API pp_status pp_excset_root(const pp_excset* s, size_t index, double* re,
                                double* im, int* multiplicity);
PP_API size_t pp_excset_total_multiplicity(const pp_excset* s);
PP_API size_t pp_excset_unit_interval_count(const pp_excset* s);
PP_API void pp_excset_free(pp_excset* s);

/* ---- analysis --------------------------------------------------------- */

PP_API pp_status pp_cyclicity(const pp_matrix* h0, const pp_matrix* v,
                              const pp_tolerances* tol, int* cyclic,
                              size_t* krylov_rank, size_t* generator_count);

PP_API pp_status pp_analyze(const pp_matrix* h0, const pp_matrix* v,
                            double lambda0, uint64_t seed,
                            const pp_tolerances* tol, pp_report** out);
PP_API pp_status pp_report_to_json(const pp_report* r, char** out);
PP_API pp_kind pp_report_kind(const pp_report* r);
PP_API int pp_report_cyclic(const pp_report* r);
PP_API int pp_report_lambda0_in_spectrum(const pp_report* r);
PP_API void pp_report_v_class(const pp_report* r, int* psd, int* nsd,
                              int* indefinite, size_t* rank_plus,
                              size_t* rank_minus, size_t* kernel_dim);
PP_API size_t pp_report_root_count(const pp_report* r);
PP_API pp_status pp_report_root(const pp_report* r, size_t index, double* re,
                                double* im, int* multiplicity);
PP_API double pp_report_measure_estimate(const pp_report* r);
PP_API size_t pp_report_witness_count(const pp_report* r);
PP_API void pp_report_free(pp_report* r);

/* Monte Carlo surrogate for the measure of {t in [0,1] :
 * dist(lambda0, spec(H0 + tV)) < eps}; deterministic for a given seed. */
PP_API pp_status pp_measure_estimate(const pp_matrix* h0, const pp_matrix* v,
                                     double lambda0, double eps,
                                     size_t samples, uint64_t seed,
                                     const pp_tolerances* tol, double* out);

/* ---- resolvent (Birman–Schwinger) route ------------------------------- */

PP_API pp_status pp_bs_reduce(const pp_matrix* h0, const pp_matrix* v,
                              double e0, const pp_tolerances* tol,
                              pp_bs** out);
PP_API size_t pp_bs_count(const pp_bs* r);
PP_API pp_status pp_bs_exceptional_t(const pp_bs* r, size_t index, double* re,
                                     double* im);
PP_API size_t pp_bs_count_in_unit_interval(const pp_bs* r);
PP_API pp_status pp_bs_to_json(const pp_bs* r, char** out);
PP_API void pp_bs_free(pp_bs* r);

/* ---- corpus ------------------------------------------------------------ */

PP_API size_t pp_corpus_count(void);
PP_API const char* pp_corpus_id(size_t index);
PP_API const char* pp_corpus_provenance(size_t index);
PP_API const char* pp_corpus_notes(size_t index);
/* Runs one fixture; *pass reports the comparison against its expected
 * outcome, *json (optional) receives the full outcome document. */
PP_API pp_status pp_corpus_run(const char* id, const pp_tolerances* tol,
                               int* pass, char** json);

/* ---- counterexample construction -------------------------------------- */

/* Seeded search for a family with an affine-in-t persistent kernel; h0/v
 * receive new matrix handles, witness_json (optional) the witness vectors
 * and their constraint residuals. */
PP_API pp_status pp_construct_persistent_family(size_t dim, uint64_t seed,
                                                const pp_tolerances* tol,
                                                pp_matrix** h0, pp_matrix** v,
                                                char** witness_json);

/* Runs `trials` seeded constructions (trial seed = seed + index) and keeps
 * the families confirmed by an independent analysis pass. */
PP_API pp_status pp_hunt_run(size_t dim, size_t trials, uint64_t seed,
                         const pp_tolerances* tol, pp_hunt** out);
PP_API size_t pp_hunt_trial_count(const pp_hunt* h);
PP_API size_t pp_hunt_success_count(const pp_hunt* h);
PP_API pp_status pp_hunt_family(const pp_hunt* h, size_t index,
                                pp_matrix** h0, pp_matrix** v);
PP_API pp_status pp_hunt_to_json(const pp_hunt* h, char** out);
PP_API void pp_hunt_free(pp_hunt* h);

#ifdef __cplusplus
}
#endif

#endif /* PENCILPERSIST_H */
