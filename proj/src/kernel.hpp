#pragma once

#include <optional>

#include "context.hpp"

// Poisson-Szego kernel P_h(x, zeta) = ((1 - |x|^2) / |x - zeta|^2)^(n-1)
// restricted to the axis point x = r e_n. By rotation invariance every
// quantity in this library only needs that slice, parameterized by the
// zonal coordinate t = <zeta, e_n>.
namespace hypschwarz::kernel {

struct KernelRange {
  double min;
  double max;
};

double poisson_szego_axis(const BallContext& ctx, double r, double t);

/// Extremes of the kernel slice, attained at t = -1 and t = 1.
KernelRange kernel_range(const BallContext& ctx, double r);

/// Zonal coordinate t0 in [-1, 1] where the kernel slice equals `level`,
/// or nullopt when `level` lies outside the slice's range. At r = 0 the
/// slice is constant and only level = 1 is accepted (returns nullopt).
std::optional<double> crossing_point(const BallContext& ctx, double r,
                                     double level);

/// Partial derivative of the kernel slice with respect to r.
double d_kernel_dr(const BallContext& ctx, double r, double t);

}  // namespace hypschwarz::kernel
