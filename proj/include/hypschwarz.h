#ifndef HYPSCHWARZ_H
#define HYPSCHWARZ_H

#include <stddef.h>
#include <stdint.h>

#if defined(HS_BUILDING_LIBRARY)
#define HS_API __attribute__((visibility("default")))
#else
#define HS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes returned by every fallible call. */
typedef enum hs_status {
  HS_OK = 0,
  HS_ERR_DOMAIN = 1,        /* argument outside the mathematical domain */
  HS_ERR_CONVERGENCE = 2,   /* series or iteration did not converge */
  HS_ERR_QUADRATURE = 3,    /* quadrature produced a non-finite or degenerate result */
  HS_ERR_BRACKET = 4,       /* root bracket lost its sign change */
  HS_ERR_INVALID_ARGUMENT = 5,
  HS_ERR_INTERNAL = 99
} hs_status;

typedef enum hs_method {
  HS_METHOD_NUMERIC = 0,
  HS_METHOD_CLOSED_P1 = 1,
  HS_METHOD_CLOSED_P2 = 2,
  HS_METHOD_CLOSED_PINF = 3
} hs_method;

/* Ball dimension n, exponent p (HUGE_VAL / INFINITY for p = inf) and the
 * quadrature order. Immutable after creation and safe to share between
 * threads. */
typedef struct hs_context hs_context;

typedef struct hs_gp_result {
  double r;
  double a_star;
  double g_value;
  hs_method method;
  double est_error;
} hs_gp_result;

typedef struct hs_sharpness_report {
  double r;
  double g_bound;
  double attained;
  double u_at_zero;
  double relative_gap;
} hs_sharpness_report;

typedef struct hs_ratio_report {
  int count;
  int violations;
  double max_ratio;
} hs_ratio_report;

typedef struct hs_l2_gradient_result {
  int n;
  int count;
  double constant_sqrt_form;  /* sqrt(2(n-1)) */
  double constant_sharp_form; /* 2(n-1)/sqrt(n) */
  int holds_sqrt_form;
  int holds_sharp_form;
  double max_ratio_sqrt_form;
  double max_ratio_sharp_form;
  double linear_lhs; /* g(t) = t */
  double linear_rhs_sqrt_form;
  double linear_rhs_sharp_form;
} hs_l2_gradient_result;

/* Called once per acceptance criterion, in order. `passed` is 0 or 1. */
typedef void (*hs_criterion_callback)(int id, int passed, const char* title,
                                      const char* detail, double seconds,
                                      void* user_data);

HS_API const char* hs_version(void);
HS_API const char* hs_status_string(hs_status status);

/* Message of the most recent failure on the calling thread, or "". */
HS_API const char* hs_last_error(void);

/* order = 0 selects the default (128). */
HS_API hs_status hs_context_create(int n, double p, int order, hs_context** out);
HS_API void hs_context_destroy(hs_context* ctx);
HS_API int hs_context_n(const hs_context* ctx);
HS_API double hs_context_p(const hs_context* ctx);
HS_API double hs_context_q(const hs_context* ctx);
HS_API int hs_context_order(const hs_context* ctx);

/* Sharp bound G_p(r) with its optimal shift. */
HS_API hs_status hs_gp(const hs_context* ctx, double r, hs_gp_result* out);

/* hs_gp over `count` radii; out[i] belongs to radii[i]. */
HS_API hs_status hs_gp_grid(const hs_context* ctx, const double* radii,
                            size_t count, hs_gp_result* out);

/* Optimal shift a*(r); closed forms for p = 1 and p = inf. */
HS_API hs_status hs_a_star(const hs_context* ctx, double r, double* out);

/* Derivative of a*(r) in r for 1 < p < inf and 0 < r < 1. */
HS_API hs_status hs_da_star_dr(const hs_context* ctx, double r, double* out);

/* U_h(r e_n) from the hypergeometric closed form. `elementary` receives the
 * elementary form for n = 3, 4, 5 and NaN otherwise; it may be NULL. */
HS_API hs_status hs_u_h(int n, double r, double* closed, double* elementary);

/* Sharp gradient constant C_p. */
HS_API hs_status hs_grad_constant(const hs_context* ctx, double* out);

/* |grad u(0)| / ||phi||_p for the extremal datum |t|^(q-1) sign(t);
 * p > 1. */
HS_API hs_status hs_grad_extremal_ratio(const hs_context* ctx, double* out);

/* G_p(h) / h for 0 < h <= 0.01. */
HS_API hs_status hs_gp_derivative_at_zero(const hs_context* ctx, double h,
                                          double* out);

HS_API hs_status hs_verify_sharpness(const hs_context* ctx, double r,
                                     hs_sharpness_report* out);

HS_API hs_status hs_random_bound_check(const hs_context* ctx, double r,
                                       int count, uint64_t seed,
                                       hs_ratio_report* out);

HS_API hs_status hs_random_gradient_check(const hs_context* ctx, int count,
                                          uint64_t seed, hs_ratio_report* out);

/* u_i(r e_n) for the p = 1 cap datum with index i >= 2. order = 0 selects
 * the default. */
HS_API hs_status hs_minimizing_sequence_p1(int n, double r, int i, int order,
                                           double* out);

/* Empirical comparison of the two L^2 gradient constants. `summary` (may
 * be NULL) receives a NUL-terminated one-line description, truncated to
 * `summary_size`. */
HS_API hs_status hs_l2_gradient_report(int n, int count, uint64_t seed, int order,
                                     hs_l2_gradient_result* out, char* summary,
                                     size_t summary_size);

/* Runs acceptance criteria 1..9. `callback` may be NULL. `failures`
 * receives the number of failed criteria. */
HS_API hs_status hs_run_acceptance(hs_criterion_callback callback,
                                   void* user_data, int* failures);

#ifdef __cplusplus
}
#endif

#endif /* HYPSCHWARZ_H */
