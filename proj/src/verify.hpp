#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "context.hpp"
#include "quadrature.hpp"

// Certification of the Schwarz bound on scalar zonal boundary data:
// extremal constructions, Poisson-Szego integrals along the axis, the
// gradient at the origin, seeded random bound checks and the p = 1 cap
// sequence.
namespace hypschwarz::verify {

/// Scalar boundary datum phi(eta) = g(<eta, e_n>) with its sigma-mean and
/// L^p norm cached at construction.
///
/// Breakpoints declare where g is not smooth; the exponent gives the local
/// behaviour of g itself (|s|^e times a smooth factor on each side, e = 0
/// for jumps). Integrals of |g|^p scale that exponent by p.
class ZonalBoundaryFunction {
 public:
  using Profile = std::function<double(double)>;

  /// A known mean skips the quadrature for it.
  ZonalBoundaryFunction(BallContext ctx, Profile g,
                        std::vector<quadrature::Breakpoint> breaks = {},
                        int order = quadrature::kDefaultOrder,
                        std::optional<double> known_mean = std::nullopt);

  double operator()(double t) const { return g_(t); }

  const BallContext& ctx() const noexcept { return ctx_; }
  std::span<const quadrature::Breakpoint> breaks() const noexcept {
    return breaks_;
  }
  int order() const noexcept { return order_; }
  double mean() const noexcept { return mean_; }
  double norm() const noexcept { return norm_; }
  bool centered() const noexcept { return std::abs(mean_) <= 1e-10; }

  /// int f dsigma using this function's breakpoints.
  double integrate(const quadrature::Integrand& f) const;

  /// g - mean, which has u(0) = 0.
  ZonalBoundaryFunction centered_copy() const;

 private:
  double compute_norm() const;

  BallContext ctx_;
  Profile g_;
  std::vector<quadrature::Breakpoint> breaks_;
  int order_;
  double mean_ = 0.0;
  double norm_ = 0.0;
};

/// u(r e_n) = int P_h(r e_n, eta) phi(eta) dsigma.
double poisson_integral_axis(const ZonalBoundaryFunction& phi, double r);

/// |P_h - a*|^(q-1) sign(P_h - a*), the datum attaining the bound at r e_n
/// for 1 < p < inf. Its kink sits at the crossing point of a*.
ZonalBoundaryFunction extremal_phi(const BallContext& ctx, double r,
                                   int order = quadrature::kDefaultOrder);

/// |t|^(q-1) sign(t), the datum attaining the gradient bound. For p = inf
/// this is sign(t).
ZonalBoundaryFunction gradient_extremal(const BallContext& ctx,
                                        int order = quadrature::kDefaultOrder);

struct SharpnessReport {
  double r;
  double g_bound;  // G_p(r) * ||phi||_p
  double attained;  // u(r e_n)
  double u_at_zero;
  double relative_gap;
};

/// Cap index used by verify_sharpness for p = 1.
inline constexpr int kSharpnessCapIndex = 4096;

/// Builds the extremal for ctx (shifted-kernel profile for 1 < p < inf,
/// sign(t) for p = inf, a narrow cap pair for p = 1) and compares
/// u(r e_n) with G_p(r) ||phi||_p.
SharpnessReport verify_sharpness(const BallContext& ctx, double r,
                                 int order = quadrature::kDefaultOrder);

/// |grad u(0)| = 2(n-1) |int t g(t) dsigma|.
double grad_at_origin(const ZonalBoundaryFunction& phi);

/// |u(r e_n)| / (G ||phi||_p); 0 when ||phi||_p vanishes.
double bound_ratio(const ZonalBoundaryFunction& phi, double r, double g_value);

/// Seeded random polynomial of degree <= 8 in t with coefficients in
/// [-1, 1], drawn from a stream derived from (seed, index) only. Real
/// roots in [-1, 1] are declared as breakpoints.
ZonalBoundaryFunction random_polynomial(const BallContext& ctx,
                                        std::uint64_t seed, std::uint64_t index,
                                        bool center,
                                        int order = quadrature::kDefaultOrder);

struct RatioCheckReport {
  int count;
  int violations;
  double max_ratio;
};

inline constexpr double kBoundTolerance = 1e-7;

/// Draws `count` centered random polynomials and checks
/// |u(r e_n)| <= G_p(r) ||phi||_p (1 + 1e-7).
RatioCheckReport random_bound_check(const BallContext& ctx, double r, int count,
                                    std::uint64_t seed,
                                    int order = quadrature::kDefaultOrder);

/// One report per radius. Each draw's norm is computed once and u(r e_n)
/// comes from the kernel moments int P_h t^k dsigma, so extra radii are
/// nearly free.
std::vector<RatioCheckReport> random_bound_check(
    const BallContext& ctx, std::span<const double> radii, int count,
    std::uint64_t seed, int order = quadrature::kDefaultOrder);

/// Same draws against |grad u(0)| <= C_p ||phi||_p (1 + 1e-7).
RatioCheckReport random_gradient_check(const BallContext& ctx, int count,
                                       std::uint64_t seed,
                                       int order = quadrature::kDefaultOrder);

/// The p = 1 cap datum chi_cap+/(2 sigma(cap+)) - chi_cap-/(2 sigma(cap-))
/// with caps |eta -+ e_n| <= 1/i, i.e. |t| >= 1 - 1/(2 i^2).
ZonalBoundaryFunction cap_sequence_function(int n, int i,
                                            int order = quadrature::kDefaultOrder);

/// u_i(r e_n) for the cap datum, integrating over each cap directly.
/// Throws ErrorKind::quadrature when the cap is too small to resolve.
double minimizing_sequence_p1(int n, double r, int i,
                              int order = quadrature::kDefaultOrder);

/// Both readings of the L^2 gradient inequality for one datum (p = 2):
/// |grad u(0)| against C sqrt(||phi||_2^2 - u(0)^2) with
/// C = sqrt(2(n-1)) and with the sharp C = 2(n-1)/sqrt(n).
struct L2GradientCheck {
  double lhs;
  double rhs_sqrt_form;
  double rhs_sharp_form;
  bool holds_sqrt_form;
  bool holds_sharp_form;
};

L2GradientCheck l2_gradient_check(const ZonalBoundaryFunction& phi);

struct L2GradientReport {
  int n;
  int count;
  double constant_sqrt_form;
  double constant_sharp_form;
  int holds_sqrt_form;
  int holds_sharp_form;
  double max_ratio_sqrt_form;
  double max_ratio_sharp_form;
  L2GradientCheck linear_profile;  // g(t) = t

  /// One-line statement of which constant held on every case.
  std::string summary() const;
};

/// Runs l2_gradient_check on `count` seeded non-centered random
/// polynomials plus g(t) = t.
L2GradientReport l2_gradient_report(int n, int count, std::uint64_t seed,
                                 int order = quadrature::kDefaultOrder);

}  // namespace hypschwarz::verify
