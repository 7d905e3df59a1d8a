#pragma once

#include "context.hpp"
#include "quadrature.hpp"

// The L^q distance of the kernel slice from a constant shift and the
// stationarity function F(r, a) whose root is the optimal shift.
namespace hypschwarz::objective {

struct ObjectiveParams {
  BallContext ctx;
  double r;
  int order = quadrature::kDefaultOrder;
};

/// (int |P_h(r e_n, .) - a|^q dsigma)^(1/q), q = ctx.q() in [1, inf).
double phi(const ObjectiveParams& params, double a);

/// phi(a)^q - phi(b)^q, evaluated node by node from the exact difference
/// of the shifts so the result keeps relative accuracy when a and b are
/// close. q = ctx.q() in [1, inf).
double phi_q_difference(const ObjectiveParams& params, double a, double b);

/// int (P_h - a) |P_h - a|^(q-2) dsigma. Requires 1 < q < inf.
double big_f(const ObjectiveParams& params, double a);

/// (1 - q) int |P_h - a|^(q-2) dsigma, always negative.
double dF_da(const ObjectiveParams& params, double a);

/// (q - 1) int d/dr P_h * |P_h - a|^(q-2) dsigma.
double dF_dr(const ObjectiveParams& params, double a);

/// int |P_h - a|^(q-1) dsigma, the natural magnitude of big_f near a.
double f_scale(const ObjectiveParams& params, double a);

}  // namespace hypschwarz::objective
