#pragma once

#include <optional>

namespace hypschwarz::special {

/// Parameter slots of 2F1(a, b; c; z).
struct HypergeometricArgs {
  double a;
  double b;
  double c;
  double z;
  /// 1 - z when the caller knows it more accurately than the subtraction.
  std::optional<double> one_minus_z = std::nullopt;
};

/// ln Gamma(x) for x > 0 (Lanczos, g = 671/128, 14 terms).
double log_gamma(double x);

/// Gamma(x) for any x that is not a non-positive integer, via reflection
/// for x < 0.5.
double gamma(double x);

/// Gauss hypergeometric function on 0 <= z < 1.
///
/// Plain series for z <= 0.5. Above that the Euler transformation is used
/// when c - a - b < 0 or when it turns the series into a polynomial; for
/// z > 0.9 with c - a - b not an integer the 1 - z connection formula is
/// used instead. Throws ErrorKind::convergence when a series does not reach
/// relative term size 1e-16 within 1e6 terms.
double gauss_2f1(const HypergeometricArgs& args);

/// Absolute q-moment of a coordinate over the unit sphere in R^n,
/// Gamma(n/2) Gamma((1+q)/2) / (sqrt(pi) Gamma((n+q)/2)).
double alpha_q(int n, double q);

}  // namespace hypschwarz::special
