#pragma once

#include <functional>

namespace hypschwarz {

struct MinimizeResult {
  double x;
  double value;
  int evaluations;
};

/// Golden-section search for the minimizer of a unimodal f on [lo, hi].
/// Stops when the bracket is narrower than x_tol or after max_evaluations.
MinimizeResult golden_section_minimize(const std::function<double(double)>& f,
                                       double lo, double hi, double x_tol,
                                       int max_evaluations = 400);

/// Golden-section search driven by comparisons only: `less(x, y)` is true
/// when f(x) < f(y). Useful when f(x) - f(y) can be evaluated more
/// accurately than f itself. `value` is left at 0.
MinimizeResult golden_section_minimize_by(
    const std::function<bool(double, double)>& less, double lo, double hi,
    double x_tol, int max_evaluations = 400);

}  // namespace hypschwarz
