#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <tuple>

#include <Eigen/Eigenvalues>

#include "error.hpp"
#include "special.hpp"

namespace hypschwarz::quadrature {
namespace {

constexpr int kMaxNewtonIterations = 100;
constexpr double kKnotMergeTolerance = 1e-15;

struct JacobiValues {
  double p;       // P_n^(alpha,beta)(x)
  double p_prev;  // P_{n-1}^(alpha,beta)(x)
  double dp;      // d/dx P_n^(alpha,beta)(x)
};

JacobiValues jacobi_values(int order, double alpha, double beta, double x) {
  const double ab = alpha + beta;
  double p_prev = 1.0;
  double p = 0.5 * (alpha - beta + (2.0 + ab) * x);
  for (int j = 2; j <= order; ++j) {
    const double twoj_ab = 2.0 * j + ab;
    const double a = 2.0 * j * (j + ab) * (twoj_ab - 2.0);
    const double b = (twoj_ab - 1.0) *
                     (alpha * alpha - beta * beta + twoj_ab * (twoj_ab - 2.0) * x);
    const double c = 2.0 * (j - 1 + alpha) * (j - 1 + beta) * twoj_ab;
    const double next = (b * p - c * p_prev) / a;
    p_prev = p;
    p = next;
  }
  const double twon_ab = 2.0 * order + ab;
  const double dp = (order * (alpha - beta - twon_ab * x) * p +
                     2.0 * (order + alpha) * (order + beta) * p_prev) /
                    (twon_ab * (1.0 - x * x));
  return {p, p_prev, dp};
}

struct Knot {
  double t;
  double exponent;
};

double checked(double value, double t) {
  if (!std::isfinite(value)) {
    fail(ErrorKind::quadrature,
         "integrand is not finite at t=" + std::to_string(t));
  }
  return value;
}


// x^e with shortcuts for the exponents produced by integer dimensions.
double weight_pow(double x, double e) {
  if (e == 0.0) return 1.0;
  if (e == 0.5) return std::sqrt(x);
  if (e == 1.0) return x;
  if (e == 1.5) return x * std::sqrt(x);
  if (e == 2.0) return x * x;
  return std::pow(x, e);
}

// Integrates c_n (1 - t^2)^beta f(t) over the half-piece between `knot` and
// `far`: geometric Gauss-Legendre panels toward the knot, then a Jacobi
// panel whose weight carries s^knot.exponent, s = |t - knot|. At +-1 the
// sphere weight is part of the knot's exponent.
double graded_half(const Knot& knot, double far, int panel_order, double beta,
                   double c_n, const Integrand& f) {
  const double length = std::abs(far - knot.t);
  if (length == 0.0) return 0.0;
  const double dir = far > knot.t ? 1.0 : -1.0;
  const bool at_lower = knot.t == -1.0;
  const bool at_upper = knot.t == 1.0;
  // Distances to -1 and +1 from the offset, exact at the pole knots.
  auto lower_of = [&](double t, double s) { return at_lower ? s : 1.0 + t; };
  auto upper_of = [&](double t, double s) { return at_upper ? s : 1.0 - t; };

  const auto legendre = gauss_jacobi(panel_order, 0.0, 0.0);
  double total = 0.0;
  double outer = length;
  for (int panel = 0; panel < kGradedPanels; ++panel) {
    const double inner = outer * kGradingRatio;
    double sum = 0.0;
    for (std::size_t j = 0; j < legendre->nodes.size(); ++j) {
      const double s = 0.5 * (inner + outer) +
                       0.5 * (outer - inner) * legendre->nodes[j];
      const double t = knot.t + dir * s;
      sum += legendre->weights[j] *
             weight_pow(lower_of(t, s) * upper_of(t, s), beta) *
             checked(f(t), t);
    }
    total += 0.5 * (outer - inner) * sum;
    outer = inner;
  }

  // Innermost panel between the knot and knot + dir * outer.
  const double extra = knot.exponent - (at_lower || at_upper ? beta : 0.0);
  const auto rule = dir > 0.0 ? gauss_jacobi(panel_order, 0.0, knot.exponent)
                              : gauss_jacobi(panel_order, knot.exponent, 0.0);
  const double scale = std::pow(0.5 * outer, 1.0 + knot.exponent);
  double sum = 0.0;
  for (std::size_t j = 0; j < rule->nodes.size(); ++j) {
    const double x = rule->nodes[j];
    const double s = dir > 0.0 ? 0.5 * outer * (1.0 + x) : 0.5 * outer * (1.0 - x);
    const double t = knot.t + dir * s;
    double weight = 1.0;
    if (at_lower) {
      weight = weight_pow(upper_of(t, s), beta);
    } else if (at_upper) {
      weight = weight_pow(lower_of(t, s), beta);
    } else {
      weight = weight_pow(lower_of(t, s) * upper_of(t, s), beta);
    }
    double value = weight * checked(f(t), t);
    if (extra != 0.0) value /= std::pow(s, extra);
    sum += rule->weights[j] * value;
  }
  return c_n * (total + scale * sum);
}


}  // namespace

GaussRule compute_gauss_jacobi(int order, double alpha, double beta) {
  require(order >= 1, "Gauss-Jacobi order must be >= 1");
  require(alpha > -1.0 && beta > -1.0,
          "Gauss-Jacobi exponents must exceed -1");
  GaussRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  if (order == 1) {
    rule.nodes[0] = (beta - alpha) / (alpha + beta + 2.0);
    rule.weights[0] = std::exp((alpha + beta + 1.0) * std::numbers::ln2 +
                               special::log_gamma(alpha + 1.0) +
                               special::log_gamma(beta + 1.0) -
                               special::log_gamma(alpha + beta + 2.0));
    return rule;
  }

  const double ab = alpha + beta;
  const double log_weight_factor =
      special::log_gamma(alpha + order) + special::log_gamma(beta + order) -
      special::log_gamma(order + 1.0) - special::log_gamma(order + ab + 1.0) +
      ab * std::numbers::ln2;

  // Nodes from the symmetric tridiagonal Jacobi matrix, then polished by
  // Newton on the three-term recurrence.
  Eigen::VectorXd diag(order);
  Eigen::VectorXd sub(order - 1);
  diag(0) = (beta - alpha) / (ab + 2.0);
  for (int k = 1; k < order; ++k) {
    const double s = 2.0 * k + ab;
    diag(k) = (beta * beta - alpha * alpha) / (s * (s + 2.0));
    const double b2 =
        k == 1 ? 4.0 * (1.0 + alpha) * (1.0 + beta) / ((s * s) * (s + 1.0))
               : 4.0 * k * (k + alpha) * (k + beta) * (k + ab) /
                     (s * s * (s + 1.0) * (s - 1.0));
    sub(k - 1) = std::sqrt(b2);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    fail(ErrorKind::quadrature, "Gauss-Jacobi eigenvalue solve did not converge "
                                "at order " + std::to_string(order));
  }

  for (int i = 0; i < order; ++i) {
    double x = solver.eigenvalues()(i);
    for (int it = 0; it < kMaxNewtonIterations; ++it) {
      const JacobiValues v = jacobi_values(order, alpha, beta, x);
      const double step = v.p / v.dp;
      if (!std::isfinite(step)) break;
      x -= step;
      if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(x))) break;
    }
    if (!std::isfinite(x) || !(x > -1.0 && x < 1.0)) {
      fail(ErrorKind::quadrature,
           "Gauss-Jacobi node " + std::to_string(i) + " of order " +
               std::to_string(order) + " did not converge");
    }
    const JacobiValues v = jacobi_values(order, alpha, beta, x);
    rule.nodes[i] = x;
    rule.weights[i] = std::exp(log_weight_factor) * (2.0 * order + ab) /
                      (v.dp * v.p_prev);
  }

  for (int i = 0; i < order; ++i) {
    const bool ordered = i == 0 || rule.nodes[i] > rule.nodes[i - 1];
    if (!ordered || !(rule.weights[i] > 0.0)) {
      fail(ErrorKind::quadrature,
           "Gauss-Jacobi nodes collapsed at order " + std::to_string(order));
    }
  }
  return rule;
}

std::shared_ptr<const GaussRule> gauss_jacobi(int order, double alpha,
                                              double beta) {
  using Key = std::tuple<int, double, double>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const GaussRule>> cache;
  const Key key{order, alpha, beta};
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto rule = std::make_shared<const GaussRule>(
      compute_gauss_jacobi(order, alpha, beta));
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(rule)).first->second;
}

double zonal_normalization(int n) {
  require(n >= 3, "dimension n must be >= 3");
  return std::exp(special::log_gamma(0.5 * n) -
                  special::log_gamma(0.5 * (n - 1))) /
         std::sqrt(std::numbers::pi);
}

ZonalQuadrature build_rule(int n, int order) {
  require(n >= 3, "dimension n must be >= 3");
  require(order >= 2, "quadrature order must be >= 2");
  const double beta = 0.5 * (n - 3);
  GaussRule rule = compute_gauss_jacobi(order, beta, beta);
  const double c_n = zonal_normalization(n);
  ZonalQuadrature zonal;
  zonal.n = n;
  zonal.order = order;
  zonal.nodes = std::move(rule.nodes);
  zonal.weights = std::move(rule.weights);
  const std::size_t m = zonal.nodes.size();
  for (std::size_t i = 0; i < m / 2; ++i) {
    const std::size_t j = m - 1 - i;
    const double x = 0.5 * (zonal.nodes[j] - zonal.nodes[i]);
    const double w = 0.5 * (zonal.weights[i] + zonal.weights[j]);
    zonal.nodes[i] = -x;
    zonal.nodes[j] = x;
    zonal.weights[i] = w;
    zonal.weights[j] = w;
  }
  if (m % 2 == 1) zonal.nodes[m / 2] = 0.0;
  double total = 0.0;
  for (double& w : zonal.weights) {
    w *= c_n;
    total += w;
  }
  for (double& w : zonal.weights) w /= total;
  return zonal;
}

std::shared_ptr<const ZonalQuadrature> zonal_rule(int n, int order) {
  using Key = std::pair<int, int>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const ZonalQuadrature>> cache;
  const Key key{n, order};
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto rule = std::make_shared<const ZonalQuadrature>(build_rule(n, order));
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(rule)).first->second;
}

double integrate_zonal(const ZonalQuadrature& rule, const Integrand& f) {
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * checked(f(rule.nodes[i]), rule.nodes[i]);
  }
  return sum;
}

double integrate_piecewise(int n, int panel_order, const Integrand& f,
                           std::span<const Breakpoint> breaks) {
  require(n >= 3, "dimension n must be >= 3");
  require(panel_order >= 2, "panel order must be >= 2");
  const double beta = 0.5 * (n - 3);
  const double c_n = zonal_normalization(n);

  std::vector<Knot> knots{{-1.0, beta}, {1.0, beta}};
  for (const Breakpoint& b : breaks) {
    require(b.t >= -1.0 && b.t <= 1.0, "breakpoint outside [-1, 1]");
    require(b.exponent > -1.0, "breakpoint exponent must exceed -1");
    knots.push_back({b.t, b.exponent});
  }
  std::sort(knots.begin(), knots.end(),
            [](const Knot& a, const Knot& b) { return a.t < b.t; });
  // Coincident singular factors multiply, so their exponents add.
  std::vector<Knot> merged;
  for (const Knot& k : knots) {
    if (!merged.empty() && k.t - merged.back().t <= kKnotMergeTolerance) {
      merged.back().exponent += k.exponent;
      if (merged.back().t != -1.0 && k.t == 1.0) merged.back().t = 1.0;
    } else {
      merged.push_back(k);
    }
  }

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
    const Knot& lo = merged[i];
    const Knot& hi = merged[i + 1];
    const double mid = 0.5 * (lo.t + hi.t);
    total += graded_half(lo, mid, panel_order, beta, c_n, f);
    total += graded_half(hi, mid, panel_order, beta, c_n, f);
  }
  return total;
}

int panel_order_for(int order) { return std::max(16, order / 4); }

double integrate_with_breakpoint(int n, int order, const Integrand& f,
                                 std::optional<double> t0, double exponent) {
  if (!t0) return integrate_zonal(*zonal_rule(n, order), f);
  const Breakpoint b{*t0, exponent};
  return integrate_piecewise(n, panel_order_for(order), f,
                             std::span<const Breakpoint>(&b, 1));
}

}  // namespace hypschwarz::quadrature
