#include "objective.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "error.hpp"
#include "kernel.hpp"

namespace hypschwarz::objective {
namespace {

void check_params(const ObjectiveParams& params) {
  if (!(params.r >= 0.0 && params.r < 1.0)) {
    fail(ErrorKind::domain, "radius must satisfy 0 <= r < 1, got " + std::to_string(params.r));
  }
  require(params.order >= 2, "quadrature order must be >= 2");
}

void check_f_exponent(const BallContext& ctx) {
  if (!(ctx.q() > 1.0 && std::isfinite(ctx.q()))) {
    fail(ErrorKind::domain, "F(r, a) needs 1 < q < inf (" + ctx.describe() + ")");
  }
}

// Zonal integral of g(P_h(t) - a, t). The crossing point of the slice with
// a is declared as a breakpoint where g behaves like |s|^exponent.
template <typename G>
double integrate_shifted(const ObjectiveParams& params, double a,
                         double exponent, G&& g) {
  const BallContext& ctx = params.ctx;
  const auto t0 = kernel::crossing_point(ctx, params.r, a);
  return quadrature::integrate_with_breakpoint(
      ctx.n(), params.order,
      [&](double t) {
        return g(kernel::poisson_szego_axis(ctx, params.r, t) - a, t);
      },
      t0, exponent);
}

double signed_power(double x, double e) {
  return std::copysign(std::pow(std::abs(x), e), x);
}

}  // namespace

double phi(const ObjectiveParams& params, double a) {
  check_params(params);
  const double q = params.ctx.q();
  if (!(std::isfinite(q))) {
    fail(ErrorKind::domain, "phi needs finite q (" + params.ctx.describe() + ")");
  }
  require(std::isfinite(a), "shift must be finite");
  if (params.r == 0.0) return std::abs(1.0 - a);
  const double integral = integrate_shifted(
      params, a, q, [q](double d, double) { return std::pow(std::abs(d), q); });
  return std::pow(integral, 1.0 / q);
}

double phi_q_difference(const ObjectiveParams& params, double a, double b) {
  check_params(params);
  const double q = params.ctx.q();
  if (!(std::isfinite(q))) {
    fail(ErrorKind::domain, "phi needs finite q (" + params.ctx.describe() + ")");
  }
  require(std::isfinite(a) && std::isfinite(b), "shift must be finite");
  if (params.r == 0.0) {
    return std::pow(std::abs(1.0 - a), q) - std::pow(std::abs(1.0 - b), q);
  }
  const BallContext& ctx = params.ctx;
  const double r = params.r;
  const double shift = b - a;  // (P - a) - (P - b)
  auto integrand = [&](double t) {
    const double p = kernel::poisson_szego_axis(ctx, r, t);
    const double x = p - a;
    const double y = p - b;
    if (x == 0.0 || y == 0.0 || (x > 0.0) != (y > 0.0)) {
      return std::pow(std::abs(x), q) - std::pow(std::abs(y), q);
    }
    // |x|^q - |y|^q = |y|^q ((1 + (|x| - |y|) / |y|)^q - 1)
    const double ay = std::abs(y);
    const double ratio = (y > 0.0 ? shift : -shift) / ay;
    return std::pow(ay, q) * std::expm1(q * std::log1p(ratio));
  };
  std::vector<quadrature::Breakpoint> breaks;
  for (double level : {a, b}) {
    if (auto t0 = kernel::crossing_point(ctx, r, level)) breaks.push_back({*t0});
  }
  return quadrature::integrate_piecewise(
      ctx.n(), quadrature::panel_order_for(params.order), integrand, breaks);
}

double big_f(const ObjectiveParams& params, double a) {
  check_params(params);
  check_f_exponent(params.ctx);
  const double e = params.ctx.q() - 1.0;
  if (params.r == 0.0) return signed_power(1.0 - a, e);
  return integrate_shifted(params, a, e,
                           [e](double d, double) { return signed_power(d, e); });
}

double f_scale(const ObjectiveParams& params, double a) {
  check_params(params);
  check_f_exponent(params.ctx);
  const double e = params.ctx.q() - 1.0;
  if (params.r == 0.0) return std::pow(std::abs(1.0 - a), e);
  return integrate_shifted(
      params, a, e, [e](double d, double) { return std::pow(std::abs(d), e); });
}

double dF_da(const ObjectiveParams& params, double a) {
  check_params(params);
  check_f_exponent(params.ctx);
  const double q = params.ctx.q();
  const double e = q - 2.0;
  if (params.r == 0.0) {
    const double value = (1.0 - q) * std::pow(std::abs(1.0 - a), e);
    if (!std::isfinite(value)) {
      fail(ErrorKind::quadrature, "dF_da is unbounded at r = 0, a = 1");
    }
    return value;
  }
  return (1.0 - q) * integrate_shifted(params, a, e, [e](double d, double) {
           return std::pow(std::abs(d), e);
         });
}

double dF_dr(const ObjectiveParams& params, double a) {
  check_params(params);
  check_f_exponent(params.ctx);
  const double q = params.ctx.q();
  const double e = q - 2.0;
  const BallContext& ctx = params.ctx;
  const double r = params.r;
  return (q - 1.0) * integrate_shifted(params, a, e, [&](double d, double t) {
           return kernel::d_kernel_dr(ctx, r, t) * std::pow(std::abs(d), e);
         });
}

}  // namespace hypschwarz::objective
