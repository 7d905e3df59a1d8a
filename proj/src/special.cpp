#include "special.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "error.hpp"

namespace hypschwarz::special {
namespace {

constexpr int kMaxSeriesTerms = 1'000'000;
constexpr double kSeriesTolerance = 1e-16;
constexpr double kIntegerTolerance = 1e-12;

bool is_nonpositive_integer(double x) {
  return x <= 0.0 && std::abs(x - std::round(x)) <= kIntegerTolerance;
}

bool is_integer(double x) {
  return std::abs(x - std::round(x)) <= kIntegerTolerance;
}

// Direct power series. Terminates on its own when a or b is a non-positive
// integer.
double series_2f1(double a, double b, double c, double z) {
  double term = 1.0;
  double sum = 1.0;
  int small_terms = 0;
  for (int k = 0; k < kMaxSeriesTerms; ++k) {
    term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
    sum += term;
    if (term == 0.0) return sum;
    if (std::abs(term) <= kSeriesTolerance * std::abs(sum)) {
      // Two consecutive small terms guard against a transient dip.
      if (++small_terms == 2) return sum;
    } else {
      small_terms = 0;
    }
  }
  fail(ErrorKind::convergence,
       "2F1 series did not converge within " + std::to_string(kMaxSeriesTerms) +
           " terms (a=" + std::to_string(a) + ", b=" + std::to_string(b) +
           ", c=" + std::to_string(c) + ", z=" + std::to_string(z) + ")");
}

// Abramowitz & Stegun 15.3.6, valid for c - a - b not an integer.
double connection_2f1(double a, double b, double c, double w) {
  const double s = c - a - b;
  const double gc = gamma(c);
  const double first = gc * gamma(s) / (gamma(c - a) * gamma(c - b)) *
                       series_2f1(a, b, 1.0 - s, w);
  const double second = std::pow(w, s) * gc * gamma(-s) /
                         (gamma(a) * gamma(b)) *
                         series_2f1(c - a, c - b, 1.0 + s, w);
  return first + second;
}

}  // namespace

double log_gamma(double x) {
  static constexpr std::array<double, 14> kCoefficients = {
      57.1562356658629235,     -59.5979603554754912,
      14.1360979747417471,     -0.491913816097620199,
      .339946499848118887e-4,  .465236289270485756e-4,
      -.983744753048795646e-4, .158088703224912494e-3,
      -.210264441724104883e-3, .217439618115212643e-3,
      -.164318106536763890e-3, .844182239838527433e-4,
      -.261908384015814087e-4, .368991826595316234e-5};
  if (!(x > 0.0)) {
    fail(ErrorKind::domain,
         "log_gamma requires x > 0, got " + std::to_string(x));
  }
  if (std::isinf(x)) return x;
  double y = x;
  double tmp = x + 5.24218750000000000;
  tmp = (x + 0.5) * std::log(tmp) - tmp;
  double ser = 0.999999999999997092;
  for (double c : kCoefficients) ser += c / ++y;
  return tmp + std::log(2.5066282746310005 * ser / x);
}

double gamma(double x) {
  if (is_nonpositive_integer(x)) {
    fail(ErrorKind::domain,
         "gamma has a pole at " + std::to_string(x));
  }
  if (x >= 0.5) return std::exp(log_gamma(x));
  // Reflection: Gamma(x) Gamma(1 - x) = pi / sin(pi x).
  return std::numbers::pi /
         (std::sin(std::numbers::pi * x) * std::exp(log_gamma(1.0 - x)));
}

double gauss_2f1(const HypergeometricArgs& args) {
  const double a = args.a;
  const double b = args.b;
  const double c = args.c;
  const double z = args.z;
  if (!(z >= 0.0 && z < 1.0)) {
    fail(ErrorKind::domain, "2F1 requires 0 <= z < 1, got z=" + std::to_string(z));
  }
  if (is_nonpositive_integer(c)) {
    fail(ErrorKind::domain,
         "2F1 requires c not a non-positive integer, got c=" + std::to_string(c));
  }
  if (z == 0.0) return 1.0;
  if (is_nonpositive_integer(a) || is_nonpositive_integer(b) || z <= 0.5) {
    return series_2f1(a, b, c, z);
  }

  const double w = args.one_minus_z.value_or(1.0 - z);
  const double s = c - a - b;
  const bool euler_terminates =
      is_nonpositive_integer(c - a) || is_nonpositive_integer(c - b);
  if (euler_terminates) {
    return std::pow(w, s) * series_2f1(c - a, c - b, c, z);
  }
  if (z > 0.9 && !is_integer(s)) {
    return connection_2f1(a, b, c, w);
  }
  if (s < 0.0) {
    return std::pow(w, s) * series_2f1(c - a, c - b, c, z);
  }
  return series_2f1(a, b, c, z);
}

double alpha_q(int n, double q) {
  require(n >= 3, "alpha_q requires n >= 3");
  require(q >= 0.0 && std::isfinite(q), "alpha_q requires finite q >= 0");
  const double half_n = 0.5 * n;
  return std::exp(log_gamma(half_n) + log_gamma(0.5 * (1.0 + q)) -
                  log_gamma(0.5 * (n + q))) /
         std::sqrt(std::numbers::pi);
}

}  // namespace hypschwarz::special
