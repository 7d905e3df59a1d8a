#include "minimize.hpp"

#include <cmath>

#include "error.hpp"

namespace hypschwarz {
namespace {

const double kInvPhi = (std::sqrt(5.0) - 1.0) / 2.0;

}  // namespace

MinimizeResult golden_section_minimize(const std::function<double(double)>& f,
                                       double lo, double hi, double x_tol,
                                       int max_evaluations) {
  require(lo < hi, "golden section needs lo < hi");
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  int evaluations = 2;
  while (b - a > x_tol && evaluations < max_evaluations) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
    ++evaluations;
  }
  return fc < fd ? MinimizeResult{c, fc, evaluations}
                 : MinimizeResult{d, fd, evaluations};
}

MinimizeResult golden_section_minimize_by(
    const std::function<bool(double, double)>& less, double lo, double hi,
    double x_tol, int max_evaluations) {
  require(lo < hi, "golden section needs lo < hi");
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  int comparisons = 0;
  bool c_better = false;
  while (b - a > x_tol && comparisons < max_evaluations) {
    c_better = less(c, d);
    ++comparisons;
    if (c_better) {
      b = d;
      d = c;
      c = b - kInvPhi * (b - a);
    } else {
      a = c;
      c = d;
      d = a + kInvPhi * (b - a);
    }
  }
  return {less(c, d) ? c : d, 0.0, comparisons + 1};
}

}  // namespace hypschwarz
