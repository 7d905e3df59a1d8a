#include "solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "error.hpp"
#include "kernel.hpp"
#include "objective.hpp"
#include "parallel.hpp"
#include "special.hpp"

namespace hypschwarz::solver {
namespace {

constexpr int kMaxRootIterations = 200;
constexpr double kRootTolerance = 1e-13;
constexpr double kResidualLimit = 1e-9;

void check_radius(double r) {
  if (!(r >= 0.0 && r < 1.0)) {
    fail(ErrorKind::domain, "radius must satisfy 0 <= r < 1, got " + std::to_string(r));
  }
}

// Elementary forms of U_h(r e_n).
double table_n3(double r) { return 2.0 * r / (1.0 + r * r); }

double table_n4(double r) {
  const double s = 1.0 + r * r;
  return 4.0 * r * (1.0 - r * r) / (std::numbers::pi * s * s) +
         4.0 / std::numbers::pi * std::atan(r);
}

double table_n5(double r) {
  const double s = 1.0 + r * r;
  const double r3 = r * r * r;
  return (3.0 * r + 2.0 * r3 + 3.0 * r3 * r * r) / (s * s * s);
}

}  // namespace

std::string_view method_name(Method method) {
  switch (method) {
    case Method::numeric:
      return "numeric";
    case Method::closed_p1:
      return "closed_p1";
    case Method::closed_p2:
      return "closed_p2";
    case Method::closed_pinf:
      return "closed_pinf";
  }
  return "unknown";
}

double solve_a_star(const BallContext& ctx, double r, int order) {
  if (!(ctx.p_is_interior())) {
    fail(ErrorKind::domain, "optimal shift root needs 1 < p < inf (" + ctx.describe() + ")");
  }
  check_radius(r);
  if (r == 0.0) return 1.0;

  const objective::ObjectiveParams params{ctx, r, order};
  const auto range = kernel::kernel_range(ctx, r);
  const double eps = 1e-12 * (range.max - range.min);
  double lo = range.min + eps;
  double hi = range.max - eps;
  const double f_lo = objective::big_f(params, lo);
  const double f_hi = objective::big_f(params, hi);
  if (!(f_lo > 0.0 && f_hi < 0.0)) {
    fail(ErrorKind::bracket,
         "F(r, a) does not change sign over the kernel range (" +
             ctx.describe() + ", r=" + std::to_string(r) + ")");
  }

  auto shrink = [&](double a, double fa) {
    if (fa > 0.0) {
      lo = std::max(lo, a);
    } else {
      hi = std::min(hi, a);
    }
  };

  // The kernel range always contains 1, and a*(r) -> 1 as r -> 0.
  double a = std::clamp(1.0, lo, hi);
  double fa = objective::big_f(params, a);
  shrink(a, fa);
  int it = 0;
  for (; it < kMaxRootIterations; ++it) {
    if (std::abs(fa) <= kRootTolerance || fa == 0.0) return a;
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) break;

    bool accepted = false;
    const double slope = objective::dF_da(params, a);
    if (slope < 0.0 && std::isfinite(slope)) {
      const double candidate = a - fa / slope;
      if (candidate > lo && candidate < hi) {
        const double fc = objective::big_f(params, candidate);
        shrink(candidate, fc);
        if (std::abs(fc) < std::abs(fa)) {
          a = candidate;
          fa = fc;
          accepted = true;
        }
      }
    }
    if (!accepted) {
      a = 0.5 * (lo + hi);
      fa = objective::big_f(params, a);
      shrink(a, fa);
    }
  }
  if (it == kMaxRootIterations) {
    fail(ErrorKind::convergence,
         "optimal shift iteration cap reached (" + ctx.describe() +
             ", r=" + std::to_string(r) + ")");
  }
  if (std::abs(fa) > kResidualLimit) {
    const double scale = objective::f_scale(params, a);
    if (std::abs(fa) > kResidualLimit * std::max(1.0, scale)) {
      fail(ErrorKind::convergence,
           "bracket collapsed with residual " + std::to_string(fa) + " (" +
               ctx.describe() + ", r=" + std::to_string(r) + ")");
    }
  }
  return a;
}

ShiftAndBound g_1_closed(int n, double r) {
  check_radius(r);
  const auto range = kernel::kernel_range(BallContext(n, 1.0), r);
  return {0.5 * (range.max + range.min), 0.5 * (range.max - range.min)};
}

double g_2_closed(int n, double r) {
  check_radius(r);
  require(n >= 3, "dimension n must be >= 3");
  if (r == 0.0) return 0.0;
  const double z = r * r;
  const double moment =
      std::pow(1.0 - z, 2.0 * n - 2.0) *
      special::gauss_2f1({2.0 * n - 2.0, 0.5 * (3.0 * n - 2.0), 0.5 * n, z});
  return std::sqrt(std::max(0.0, moment - 1.0));
}

ShiftAndBound g_inf_closed(int n, double r) {
  check_radius(r);
  require(n >= 3, "dimension n must be >= 3");
  const double s = 1.0 + r * r;
  const double ratio = (1.0 - r * r) / s;
  const double a_star = std::pow(ratio, n - 1);
  if (r == 0.0) return {1.0, 0.0};
  const double z = 4.0 * r * r / (s * s);
  if (!(z < 1.0)) {
    fail(ErrorKind::convergence,
         "U_h hypergeometric argument reached 1 at r=" + std::to_string(r));
  }
  const double log_prefactor =
      n * std::numbers::ln2 + std::log(r) + (n - 1) * std::log1p(-r * r) +
      2.0 * special::log_gamma(0.5 * n) - std::log(std::numbers::pi) -
      n * std::log(s) - special::log_gamma(n - 1.0);
  const double series =
      special::gauss_2f1({1.0, 0.5 * n, 1.5, z, ratio * ratio});
  return {a_star, std::min(std::exp(log_prefactor) * series, 1.0)};
}

std::optional<double> u_h_elementary(int n, double r) {
  check_radius(r);
  switch (n) {
    case 3:
      return table_n3(r);
    case 4:
      return table_n4(r);
    case 5:
      return table_n5(r);
    default:
      return std::nullopt;
  }
}

GpResult g_p(const BallContext& ctx, double r, int order) {
  check_radius(r);
  const int n = ctx.n();
  if (ctx.p_is_one()) {
    const auto closed = g_1_closed(n, r);
    const auto range = kernel::kernel_range(ctx, r);
    const double sup = std::max(std::abs(range.max - closed.a_star),
                                std::abs(range.min - closed.a_star));
    return {ctx, r, closed.a_star, closed.g_value, Method::closed_p1,
            std::abs(sup - closed.g_value)};
  }
  if (ctx.p_is_inf()) {
    const auto closed = g_inf_closed(n, r);
    double deviation = 0.0;
    if (r > 0.0) {
      const objective::ObjectiveParams params{ctx, r, order};
      deviation = std::abs(objective::phi(params, closed.a_star) - closed.g_value);
    }
    return {ctx, r, closed.a_star, closed.g_value, Method::closed_pinf, deviation};
  }

  const bool p_is_two = ctx.p() == 2.0;
  const Method method = p_is_two ? Method::closed_p2 : Method::numeric;
  if (r == 0.0) return {ctx, 0.0, 1.0, 0.0, method, 0.0};

  const double a_star = solve_a_star(ctx, r, order);
  const double g = objective::phi({ctx, r, order}, a_star);
  double est_error = 0.0;
  if (p_is_two) {
    est_error = std::abs(g - g_2_closed(n, r));
  } else {
    est_error = std::abs(g - objective::phi({ctx, r, 2 * order}, a_star));
  }
  return {ctx, r, a_star, g, method, est_error};
}

std::vector<GpResult> g_p_grid(const BallContext& ctx,
                               std::span<const double> radii, int order) {
  std::vector<std::optional<GpResult>> slots(radii.size());
  parallel_for(radii.size(),
               [&](std::size_t i) { slots[i] = g_p(ctx, radii[i], order); });
  std::vector<GpResult> results;
  results.reserve(radii.size());
  for (auto& slot : slots) results.push_back(*slot);
  return results;
}

double grad_constant(const BallContext& ctx) {
  const double scale = 2.0 * (ctx.n() - 1);
  if (ctx.p_is_one()) return scale;
  const double q = ctx.q();
  return scale * std::pow(special::alpha_q(ctx.n(), q), 1.0 / q);
}

double gp_derivative_at_zero(const BallContext& ctx, double h, int order) {
  require(h > 0.0 && h <= 0.01, "step must satisfy 0 < h <= 0.01");
  return g_p(ctx, h, order).g_value / h;
}

double da_star_dr(const BallContext& ctx, double r, int order) {
  require(ctx.p_is_interior(), "da*/dr needs 1 < p < inf");
  require(r > 0.0 && r < 1.0, "da*/dr needs 0 < r < 1");
  const double a = solve_a_star(ctx, r, order);
  const objective::ObjectiveParams params{ctx, r, order};
  return -objective::dF_dr(params, a) / objective::dF_da(params, a);
}

}  // namespace hypschwarz::solver
