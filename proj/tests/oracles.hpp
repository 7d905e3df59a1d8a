#pragma once

// Reference computations used only by the tests. Each is deliberately
// built from a different method than the library path it checks.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

// c_n from std::tgamma.
inline double zonal_constant(int n) {
  return std::tgamma(0.5 * n) /
         (std::sqrt(std::numbers::pi) * std::tgamma(0.5 * (n - 1)));
}

// int f(<eta, e_n>) dsigma in the polar angle theta, t = cos(theta),
// dsigma = c_n sin(theta)^(n-2) dtheta. The theta range is cut at the
// angles of `breaks_t`; each piece is halved and each half is mapped by
// theta = knot +- L u^2 so that algebraic singularities at the knots
// become smooth. Midpoint rule in u with `points` samples in total.
inline double zonal_midpoint(int n, const std::function<double(double)>& f,
                             std::vector<double> breaks_t = {},
                             long points = 2'000'000) {
  std::vector<double> knots{0.0, std::numbers::pi};
  for (double t : breaks_t) {
    if (t > -1.0 && t < 1.0) knots.push_back(std::acos(t));
  }
  std::sort(knots.begin(), knots.end());
  const long per_half =
      std::max(1000L, points / (2 * static_cast<long>(knots.size() - 1)));
  const double c_n = zonal_constant(n);
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    const double a = knots[k];
    const double b = knots[k + 1];
    const double half = 0.5 * (b - a);
    for (int side = 0; side < 2; ++side) {
      const double knot = side == 0 ? a : b;
      const double dir = side == 0 ? 1.0 : -1.0;
      double sum = 0.0;
      for (long i = 0; i < per_half; ++i) {
        const double u = (i + 0.5) / per_half;
        const double theta = knot + dir * half * u * u;
        const double jac = 2.0 * half * u;
        sum += f(std::cos(theta)) * std::pow(std::sin(theta), n - 2) * jac;
      }
      total += sum / per_half;
    }
  }
  return c_n * total;
}

// Kernel slice straight from the definition, no log-space evaluation.
inline double kernel(int n, double r, double t) {
  return std::pow((1.0 - r * r) / (1.0 + r * r - 2.0 * r * t), n - 1);
}

// Plain hypergeometric series, summed until the term is negligible.
inline double hyp2f1_series(double a, double b, double c, double z,
                            int max_terms = 200000) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k < max_terms; ++k) {
    term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

inline double central_difference(const std::function<double(double)>& f,
                                 double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline double relative_error(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

// (int |P - a|^q dsigma)^(1/q) by the midpoint oracle, split at the
// crossing point of a when it exists.
inline double phi(int n, double q, double r, double a, long points = 2'000'000) {
  std::vector<double> breaks;
  const double base = std::pow(a, 1.0 / (n - 1));
  if (r > 0.0 && a > 0.0) {
    const double t = (1.0 + r * r - (1.0 - r * r) / base) / (2.0 * r);
    if (t > -1.0 && t < 1.0) breaks.push_back(t);
  }
  const double integral = zonal_midpoint(
      n, [&](double t) { return std::pow(std::abs(kernel(n, r, t) - a), q); },
      breaks, points);
  return std::pow(integral, 1.0 / q);
}

}  // namespace oracle
