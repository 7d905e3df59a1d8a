#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "context.hpp"
#include "quadrature.hpp"

namespace hypschwarz::solver {

enum class Method { numeric, closed_p1, closed_p2, closed_pinf };

std::string_view method_name(Method method);

/// One evaluation of the sharp bound G_p(r) and its optimal shift.
struct GpResult {
  BallContext ctx;
  double r;
  double a_star;
  double g_value;
  Method method;
  /// numeric: |G at order - G at twice the order|; closed_p2: deviation
  /// between the numeric optimum and the hypergeometric closed form;
  /// closed_pinf: deviation between the closed form and direct quadrature
  /// of int |P_h - a*|; closed_p1: deviation from the sup-functional.
  double est_error;
};

struct ShiftAndBound {
  double a_star;
  double g_value;
};

/// Root of F(r, .) inside the kernel range for 1 < p < inf, by Newton
/// steps on dF_da safeguarded with bisection. a*(0) = 1.
double solve_a_star(const BallContext& ctx, double r,
                    int order = quadrature::kDefaultOrder);

GpResult g_p(const BallContext& ctx, double r,
             int order = quadrature::kDefaultOrder);

/// g_p over a list of radii, evaluated concurrently. Output order matches
/// the input order.
std::vector<GpResult> g_p_grid(const BallContext& ctx,
                               std::span<const double> radii,
                               int order = quadrature::kDefaultOrder);

/// p = 1: Chebyshev center of the kernel range and half its width.
ShiftAndBound g_1_closed(int n, double r);

/// p = 2: sqrt((1-r^2)^(2n-2) 2F1(2n-2, (3n-2)/2; n/2; r^2) - 1).
double g_2_closed(int n, double r);

/// p = inf: shift ((1-r^2)/(1+r^2))^(n-1) and G = U_h(r e_n) through
/// 2F1(1, n/2; 3/2; 4r^2/(1+r^2)^2).
ShiftAndBound g_inf_closed(int n, double r);

/// Elementary closed forms of U_h(r e_n) for n = 3, 4, 5.
std::optional<double> u_h_elementary(int n, double r);

/// Sharp constant in |Du(0)| <= C_p ||phi||_p: 2(n-1) alpha_q^(1/q), and
/// 2(n-1) for p = 1.
double grad_constant(const BallContext& ctx);

/// G_p(h) / h, the one-sided difference quotient at the origin.
double gp_derivative_at_zero(const BallContext& ctx, double h,
                             int order = quadrature::kDefaultOrder);

/// Implicit-function derivative -dF_dr / dF_da at a*(r).
double da_star_dr(const BallContext& ctx, double r,
                  int order = quadrature::kDefaultOrder);

}  // namespace hypschwarz::solver
