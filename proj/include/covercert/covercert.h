#ifndef COVERCERT_H
#define COVERCERT_H

/* C interface to covercert. Every function returns CC_OK or an error code;
 * on error, cc_last_error() describes it (per thread). Strings returned
 * through char** are heap-allocated and released with cc_string_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CC_API __declspec(dllexport)
#else
#define CC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

enum cc_status {
  CC_OK = 0,
  CC_ERR_PARSE = 1,
  CC_ERR_UNBOUNDED_POLYTOPE = 2,
  CC_ERR_EMPTY_POLYTOPE = 3,
  CC_ERR_EMPTY_SECTION = 4,
  CC_ERR_MISSING_REPRESENTATION = 5,
  CC_ERR_INCONSISTENT_REPRESENTATION = 6,
  CC_ERR_DIMENSION_TOO_LARGE = 7,
  CC_ERR_FULL_DIM_REQUIRED = 8,
  CC_ERR_ZERO_NOT_INTERIOR = 9,
  CC_ERR_ILL_CONDITIONED_BASIS = 10,
  CC_ERR_NOT_UNIFORM = 11,
  CC_ERR_WEIGHTS_INVALID = 12,
  CC_ERR_BUDGET_EXCEEDED = 13,
  CC_ERR_INFEASIBLE = 14,
  CC_ERR_NOT_INTEGRABLE = 15,
  CC_ERR_QUADRATURE_BUDGET_EXCEEDED = 16,
  CC_ERR_NOT_ISOTROPIC = 17,
  CC_ERR_DEGENERATE_MEASURE = 18,
  CC_ERR_UNSUPPORTED_DIMENSION = 19,
  CC_ERR_INVALID_ARGUMENT = 20,
  CC_ERR_INTERNAL = 99
};

typedef struct cc_polytope cc_polytope;
typedef struct cc_cover cc_cover; /* weighted cover; unit weights when parsed from text */
typedef struct cc_system cc_system;
typedef struct cc_function cc_function;

CC_API const char* cc_version(void);
CC_API const char* cc_last_error(void);
/* "ZeroNotInterior" etc.; "Ok" for CC_OK. */
CC_API const char* cc_status_name(int status);
CC_API void cc_string_free(char* s);

/* ---- bodies ---- */
CC_API int cc_polytope_from_json(const char* json, cc_polytope** out);
CC_API void cc_polytope_free(cc_polytope* p);
CC_API int cc_polytope_dim(const cc_polytope* p, size_t* dim);
CC_API int cc_polytope_to_json(const cc_polytope* p, char** json);
/* Exact volume as "p/q" plus a double approximation. */
CC_API int cc_polytope_volume(const cc_polytope* p, char** exact, double* approx);

/* ---- covers ---- */
/* "1,2;1,3;2,3"; n = 0 takes the largest index. */
CC_API int cc_cover_parse(const char* text, size_t n, cc_cover** out);
/* {"parts": [[1,2],...], "weights": ["1",...], "s": "2"} */
CC_API int cc_cover_from_json(const char* json, size_t n, cc_cover** out);
/* Parts from text, weights solved by LP for the given s ("p/q"). */
CC_API int cc_cover_solve_weights(const char* text, size_t n, const char* s, cc_cover** out);
CC_API void cc_cover_free(cc_cover* c);
CC_API int cc_cover_to_json(const cc_cover* c, char** json);

/* Listing {"n","s","count","covers":[{"cover","parts","irreducible"}]}.
 * irreducible_only restricts to irreducible covers. budget 0 uses
 * COVERCERT_BUDGET or the default. */
CC_API int cc_covers_enumerate(size_t n, size_t s, size_t max_parts, int irreducible_only, uint64_t budget,
                               char** json);

/* ---- inequality checks ----
 * kind: "bt", "dual-bt", "lw", "meyer", "weighted", "weighted-dual".
 * lw and meyer ignore the cover (may be NULL). Writes the report JSON and
 * sets *pass to 0 or 1. */
CC_API int cc_check(const char* kind, const cc_polytope* k, const cc_cover* c, char** report, int* pass);
/* Runs kind ("bt" or "dual-bt") over every s-uniform cover of [dim K] with
 * at most max_parts parts (0: no limit). *pass is 1 iff all pass. */
CC_API int cc_check_all_covers(const char* kind, const cc_polytope* k, size_t s, size_t max_parts, uint64_t budget,
                               size_t jobs, char** json, int* pass);

/* ---- certifier ---- */
/* Certificate JSON with the verification summary; *verified = 0 or 1. */
CC_API int cc_certify(const cc_polytope* k, double tol, char** json, int* verified);

/* ---- functional lab ---- */
enum cc_quadrature_scheme { CC_TENSOR_GRID = 0, CC_QUASI_RANDOM = 1 };

typedef struct cc_quadrature {
  int scheme;
  size_t points_per_axis;
  size_t total_points;
  double tail_fraction;
  double gaussian_radius;
  double truncation_radius; /* <= 0: automatic */
  size_t max_points;
  size_t jobs;
  int use_closed_forms;
} cc_quadrature;

CC_API void cc_quadrature_default(cc_quadrature* q);

/* {"variant": "gaussian"|"exp_minkowski"|"exp_l1", ...} */
CC_API int cc_function_from_json(const char* json, cc_function** out);
CC_API void cc_function_free(cc_function* f);
/* Integral of f^power over R^n (domain NULL or "") or over F_sigma ("1,3"). */
CC_API int cc_integrate(const cc_function* f, const char* domain, const cc_quadrature* q, double power, char** json);
CC_API int cc_check_functional(const cc_function* f, const cc_cover* c, const cc_quadrature* q, double tol,
                               char** report, int* pass);
CC_API int cc_lemma_check(const cc_function* f, const cc_cover* c, size_t samples, uint64_t seed, double tol,
                          char** json, int* pass);
CC_API int cc_gaussian_bl(const cc_cover* c, const cc_quadrature* q, double tol, char** json, int* pass);

/* ---- isotropic lab ---- */
/* {"vectors": [[...]], "weights": [...]} */
CC_API int cc_system_from_json(const char* json, cc_system** out);
CC_API void cc_system_free(cc_system* s);
CC_API int cc_john_check(const cc_system* s, double tol, char** json, int* isotropic);
CC_API int cc_hyperplane_cover(const cc_system* s, double tol, char** json);
/* kind: "ball" or "dual-ball". */
CC_API int cc_check_ball(const char* kind, const cc_polytope* k, const cc_system* s, double tol, char** report,
                         int* pass);
/* Discretizes a named density ("uniform", "von-mises-fisher") on S^{n-1};
 * renormalize != 0 maps the result to isotropic position. Output carries
 * "vectors" and "weights" and loads with cc_system_from_json. */
CC_API int cc_sphere_measure(const char* density, size_t n, double eps, double kappa, int renormalize, char** json);

#ifdef __cplusplus
}
#endif

#endif
