#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

// Integration of zonal functions over the unit sphere S^{n-1} with respect
// to the normalized surface measure. A zonal f(<eta, e_n>) integrates as
//
//   c_n * int_{-1}^{1} f(t) (1 - t^2)^((n-3)/2) dt,
//   c_n = Gamma(n/2) / (sqrt(pi) Gamma((n-1)/2)),
//
// which is a Gauss-Jacobi problem with alpha = beta = (n-3)/2.
namespace hypschwarz::quadrature {

using Integrand = std::function<double(double)>;

inline constexpr int kDefaultOrder = 128;
inline constexpr int kOracleOrder = 512;
inline constexpr int kGradedPanels = 12;
inline constexpr double kGradingRatio = 0.5;

/// Nodes and weights on [-1, 1] for the weight (1 - x)^alpha (1 + x)^beta.
/// Nodes ascend; weights are not normalized.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Jacobi rule by Newton iteration on the three-term recurrence.
/// Requires alpha, beta > -1 and order >= 1.
GaussRule compute_gauss_jacobi(int order, double alpha, double beta);

/// Memoized compute_gauss_jacobi. Thread-safe; rules are immutable.
std::shared_ptr<const GaussRule> gauss_jacobi(int order, double alpha,
                                              double beta);

/// Normalized zonal rule: sum of weights is 1.
struct ZonalQuadrature {
  int n = 0;
  int order = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
};

ZonalQuadrature build_rule(int n, int order);

/// Memoized build_rule.
std::shared_ptr<const ZonalQuadrature> zonal_rule(int n, int order);

/// c_n, the normalizing constant of the zonal reduction.
double zonal_normalization(int n);

/// sum_i w_i f(t_i). Throws ErrorKind::quadrature on a non-finite sample.
double integrate_zonal(const ZonalQuadrature& rule, const Integrand& f);

/// A point where the integrand is not smooth. Near `t` the integrand is
/// assumed to behave like |s - t|^exponent times a smooth factor on each
/// side; exponent 0 marks a kink or jump.
struct Breakpoint {
  double t;
  double exponent = 0.0;
};

/// Composite rule split at the breakpoints. Every piece between two knots
/// (breakpoints or +-1) is halved, and each half is graded geometrically
/// toward its knot with ratio 0.5 over kGradedPanels panels. The panel
/// touching a knot uses a Gauss-Jacobi weight carrying that knot's
/// singular factor; the sphere weight (1 - t^2)^((n-3)/2) is folded into
/// the integrand elsewhere. `panel_order` nodes per panel.
double integrate_piecewise(int n, int panel_order, const Integrand& f,
                           std::span<const Breakpoint> breaks);

/// Panel order used by integrate_with_breakpoint for a given global order.
int panel_order_for(int order);

/// Zonal integral with an optional breakpoint t0. Without one this is
/// integrate_zonal on the order-`order` rule.
double integrate_with_breakpoint(int n, int order, const Integrand& f,
                                 std::optional<double> t0,
                                 double exponent = 0.0);

}  // namespace hypschwarz::quadrature
