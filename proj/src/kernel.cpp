#include "kernel.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "error.hpp"

namespace hypschwarz::kernel {
namespace {

void check_radius(double r) {
  if (!(r >= 0.0 && r < 1.0)) {
    fail(ErrorKind::domain, "axis radius must satisfy 0 <= r < 1, got " + std::to_string(r));
  }
}

void check_zonal(double t) {
  if (!(t >= -1.0 && t <= 1.0)) {
    fail(ErrorKind::domain, "zonal coordinate must lie in [-1, 1], got " + std::to_string(t));
  }
}

// |r e_n - zeta|^2 = 1 + r^2 - 2 r t, arranged to stay accurate when both
// r and t approach 1.
double distance_squared(double r, double t) {
  const double one_minus_r = 1.0 - r;
  return one_minus_r * one_minus_r + 2.0 * r * (1.0 - t);
}

}  // namespace

double poisson_szego_axis(const BallContext& ctx, double r, double t) {
  check_radius(r);
  check_zonal(t);
  if (r == 0.0) return 1.0;
  const double log_ratio =
      std::log1p(-r * r) - std::log(distance_squared(r, t));
  return std::exp((ctx.n() - 1) * log_ratio);
}

KernelRange kernel_range(const BallContext& ctx, double r) {
  check_radius(r);
  const double log_ratio = std::log1p(r) - std::log1p(-r);
  const double exponent = (ctx.n() - 1) * log_ratio;
  return {std::exp(-exponent), std::exp(exponent)};
}

std::optional<double> crossing_point(const BallContext& ctx, double r,
                                     double level) {
  check_radius(r);
  require(level > 0.0, "crossing level must be positive");
  if (r == 0.0) {
    require(level == 1.0,
            "crossing point undefined at r = 0 for level != 1");
    return std::nullopt;
  }
  // Solve ((1 - r^2) / (1 + r^2 - 2 r t))^(n-1) = level for t.
  const double root = std::pow(level, 1.0 / (1 - ctx.n()));
  double t0 = (1.0 + r * r) / (2.0 * r) - (1.0 - r * r) / (2.0 * r) * root;
  // Levels equal to the range extremes land on +-1 up to roundoff.
  constexpr double kSnap = 8.0 * std::numeric_limits<double>::epsilon();
  if (std::abs(t0 - 1.0) <= kSnap) t0 = 1.0;
  if (std::abs(t0 + 1.0) <= kSnap) t0 = -1.0;
  if (!(t0 >= -1.0 && t0 <= 1.0)) return std::nullopt;
  return t0;
}

double d_kernel_dr(const BallContext& ctx, double r, double t) {
  check_radius(r);
  check_zonal(t);
  const double d2 = distance_squared(r, t);
  const double value = poisson_szego_axis(ctx, r, t);
  return (ctx.n() - 1) * value *
         (-2.0 * r / (1.0 - r * r) - (2.0 * r - 2.0 * t) / d2);
}

}  // namespace hypschwarz::kernel
