#include "hypschwarz.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <exception>
#include <limits>
#include <new>
#include <span>
#include <string>
#include <vector>

#include "acceptance.hpp"
#include "context.hpp"
#include "error.hpp"
#include "kernel.hpp"
#include "solver.hpp"
#include "verify.hpp"

struct hs_context {
  hypschwarz::BallContext ball;
  int order;
};

namespace {

thread_local std::string last_error;

hs_status to_status(hypschwarz::ErrorKind kind) {
  switch (kind) {
    case hypschwarz::ErrorKind::domain:
      return HS_ERR_DOMAIN;
    case hypschwarz::ErrorKind::convergence:
      return HS_ERR_CONVERGENCE;
    case hypschwarz::ErrorKind::quadrature:
      return HS_ERR_QUADRATURE;
    case hypschwarz::ErrorKind::bracket:
      return HS_ERR_BRACKET;
  }
  return HS_ERR_INTERNAL;
}

hs_status invalid(const char* what) {
  last_error = what;
  return HS_ERR_INVALID_ARGUMENT;
}

template <typename Fn>
hs_status guarded(Fn&& fn) {
  try {
    last_error.clear();
    fn();
    return HS_OK;
  } catch (const hypschwarz::Error& e) {
    last_error = e.what();
    return to_status(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return HS_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return HS_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return HS_ERR_INTERNAL;
  }
}

hs_gp_result to_c(const hypschwarz::solver::GpResult& r) {
  return {r.r, r.a_star, r.g_value, static_cast<hs_method>(r.method),
          r.est_error};
}

}  // namespace

extern "C" {

const char* hs_version(void) { return "1.0.0"; }

const char* hs_status_string(hs_status status) {
  switch (status) {
    case HS_OK:
      return "ok";
    case HS_ERR_DOMAIN:
      return "domain error";
    case HS_ERR_CONVERGENCE:
      return "convergence failure";
    case HS_ERR_QUADRATURE:
      return "quadrature failure";
    case HS_ERR_BRACKET:
      return "bracket failure";
    case HS_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case HS_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* hs_last_error(void) { return last_error.c_str(); }

hs_status hs_context_create(int n, double p, int order, hs_context** out) {
  if (!out) return invalid("output pointer is null");
  *out = nullptr;
  if (order < 0 || order == 1) return invalid("quadrature order must be >= 2");
  return guarded([&] {
    *out = new hs_context{hypschwarz::BallContext(n, p),
                          order == 0 ? hypschwarz::quadrature::kDefaultOrder
                                     : order};
  });
}

void hs_context_destroy(hs_context* ctx) { delete ctx; }

int hs_context_n(const hs_context* ctx) { return ctx ? ctx->ball.n() : 0; }

double hs_context_p(const hs_context* ctx) {
  return ctx ? ctx->ball.p() : std::numeric_limits<double>::quiet_NaN();
}

double hs_context_q(const hs_context* ctx) {
  return ctx ? ctx->ball.q() : std::numeric_limits<double>::quiet_NaN();
}

int hs_context_order(const hs_context* ctx) { return ctx ? ctx->order : 0; }

hs_status hs_gp(const hs_context* ctx, double r, hs_gp_result* out) {
  if (!ctx || !out) return invalid("null argument");
  return guarded(
      [&] { *out = to_c(hypschwarz::solver::g_p(ctx->ball, r, ctx->order)); });
}

hs_status hs_gp_grid(const hs_context* ctx, const double* radii, size_t count,
                     hs_gp_result* out) {
  if (!ctx || (count > 0 && (!radii || !out))) return invalid("null argument");
  return guarded([&] {
    const auto results = hypschwarz::solver::g_p_grid(
        ctx->ball, std::span<const double>(radii, count), ctx->order);
    for (size_t i = 0; i < count; ++i) out[i] = to_c(results[i]);
  });
}

hs_status hs_a_star(const hs_context* ctx, double r, double* out) {
  if (!ctx || !out) return invalid("null argument");
  return guarded([&] {
    namespace solver = hypschwarz::solver;
    if (ctx->ball.p_is_one()) {
      *out = solver::g_1_closed(ctx->ball.n(), r).a_star;
    } else if (ctx->ball.p_is_inf()) {
      *out = solver::g_inf_closed(ctx->ball.n(), r).a_star;
    } else {
      *out = solver::solve_a_star(ctx->ball, r, ctx->order);
    }
  });
}

hs_status hs_da_star_dr(const hs_context* ctx, double r, double* out) {
  if (!ctx || !out) return invalid("null argument");
  return guarded(
      [&] { *out = hypschwarz::solver::da_star_dr(ctx->ball, r, ctx->order); });
}

hs_status hs_u_h(int n, double r, double* closed, double* elementary) {
  if (!closed) return invalid("null argument");
  return guarded([&] {
    *closed = hypschwarz::solver::g_inf_closed(n, r).g_value;
    if (elementary) {
      *elementary = hypschwarz::solver::u_h_elementary(n, r).value_or(
          std::numeric_limits<double>::quiet_NaN());
    }
  });
}

hs_status hs_grad_constant(const hs_context* ctx, double* out) {
  if (!ctx || !out) return invalid("null argument");
  return guarded([&] { *out = hypschwarz::solver::grad_constant(ctx->ball); });
}

hs_status hs_grad_extremal_ratio(const hs_context* ctx, double* out) {
  if (!ctx || !out) return invalid("null argument");
  return guarded([&] {
    const auto phi = hypschwarz::verify::gradient_extremal(ctx->ball, ctx->order);
    *out = hypschwarz::verify::grad_at_origin(phi) / phi.norm();
  });
}

hs_status hs_gp_derivative_at_zero(const hs_context* ctx, double h,
                                   double* out) {
  if (!ctx || !out) return invalid("null argument");
  return guarded([&] {
    *out = hypschwarz::solver::gp_derivative_at_zero(ctx->ball, h, ctx->order);
  });
}

hs_status hs_verify_sharpness(const hs_context* ctx, double r,
                              hs_sharpness_report* out) {
  if (!ctx || !out) return invalid("null argument");
  return guarded([&] {
    const auto s = hypschwarz::verify::verify_sharpness(ctx->ball, r, ctx->order);
    *out = {s.r, s.g_bound, s.attained, s.u_at_zero, s.relative_gap};
  });
}

hs_status hs_random_bound_check(const hs_context* ctx, double r, int count,
                                uint64_t seed, hs_ratio_report* out) {
  if (!ctx || !out) return invalid("null argument");
  return guarded([&] {
    const auto rep = hypschwarz::verify::random_bound_check(ctx->ball, r, count,
                                                            seed, ctx->order);
    *out = {rep.count, rep.violations, rep.max_ratio};
  });
}

hs_status hs_random_gradient_check(const hs_context* ctx, int count,
                                   uint64_t seed, hs_ratio_report* out) {
  if (!ctx || !out) return invalid("null argument");
  return guarded([&] {
    const auto rep = hypschwarz::verify::random_gradient_check(ctx->ball, count,
                                                               seed, ctx->order);
    *out = {rep.count, rep.violations, rep.max_ratio};
  });
}

hs_status hs_minimizing_sequence_p1(int n, double r, int i, int order,
                                    double* out) {
  if (!out) return invalid("null argument");
  if (order < 0 || order == 1) return invalid("quadrature order must be >= 2");
  return guarded([&] {
    *out = hypschwarz::verify::minimizing_sequence_p1(
        n, r, i, order == 0 ? hypschwarz::quadrature::kDefaultOrder : order);
  });
}

hs_status hs_l2_gradient_report(int n, int count, uint64_t seed, int order,
                              hs_l2_gradient_result* out, char* summary,
                              size_t summary_size) {
  if (!out) return invalid("null argument");
  if (order < 0 || order == 1) return invalid("quadrature order must be >= 2");
  return guarded([&] {
    const auto rep = hypschwarz::verify::l2_gradient_report(
        n, count, seed,
        order == 0 ? hypschwarz::quadrature::kDefaultOrder : order);
    *out = {rep.n,
            rep.count,
            rep.constant_sqrt_form,
            rep.constant_sharp_form,
            rep.holds_sqrt_form,
            rep.holds_sharp_form,
            rep.max_ratio_sqrt_form,
            rep.max_ratio_sharp_form,
            rep.linear_profile.lhs,
            rep.linear_profile.rhs_sqrt_form,
            rep.linear_profile.rhs_sharp_form};
    if (summary && summary_size > 0) {
      const std::string text = rep.summary();
      const size_t len = std::min(text.size(), summary_size - 1);
      std::memcpy(summary, text.data(), len);
      summary[len] = '\0';
    }
  });
}

hs_status hs_run_acceptance(hs_criterion_callback callback, void* user_data,
                            int* failures) {
  if (!failures) return invalid("null argument");
  return guarded([&] {
    int failed = 0;
    hypschwarz::acceptance::run_all([&](const auto& result) {
      if (!result.passed) ++failed;
      if (callback) {
        callback(result.id, result.passed ? 1 : 0, result.title.c_str(),
                 result.detail.c_str(), result.seconds, user_data);
      }
    });
    *failures = failed;
  });
}

}  // extern "C"
