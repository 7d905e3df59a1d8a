#include "verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <random>

#include "error.hpp"
#include "kernel.hpp"
#include "minimize.hpp"
#include "parallel.hpp"
#include "solver.hpp"
#include "special.hpp"

namespace hypschwarz::verify {
namespace {

constexpr int kMaxDegree = 8;
constexpr int kRootScanPoints = 257;
constexpr int kSupScanPoints = 2049;

double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

// Coefficients in ascending powers of t.
struct Polynomial {
  std::array<double, kMaxDegree + 1> c{};
  int degree = 0;

  double operator()(double t) const {
    double v = 0.0;
    for (int k = degree; k >= 0; --k) v = v * t + c[k];
    return v;
  }
};

// Uniform double in [0, 1) from the top 53 bits, so draws do not depend on
// the standard library's distribution implementations.
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Polynomial draw_polynomial(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  Polynomial poly;
  poly.degree = static_cast<int>(rng() % (kMaxDegree + 1));
  for (int k = 0; k <= poly.degree; ++k) {
    poly.c[k] = 2.0 * unit_uniform(rng) - 1.0;
  }
  return poly;
}

// Sign changes of f on a uniform scan of [-1, 1], refined by bisection.
template <typename F>
std::vector<double> sign_changes(const F& f) {
  std::vector<double> roots;
  double prev_t = -1.0;
  double prev_v = f(prev_t);
  for (int i = 1; i < kRootScanPoints; ++i) {
    const double t = -1.0 + 2.0 * i / (kRootScanPoints - 1);
    const double v = f(t);
    if (prev_v == 0.0 && i > 1) {
      roots.push_back(prev_t);
    } else if (prev_v * v < 0.0) {
      double lo = prev_t;
      double hi = t;
      for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (sign(f(mid)) == sign(prev_v)) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    prev_t = t;
    prev_v = v;
  }
  return roots;
}

std::vector<double> real_roots(const Polynomial& poly) { return sign_changes(poly); }

// Exact sigma-mean from the moments of t: zero for odd powers, alpha_k for
// even ones.
double polynomial_mean(int n, const Polynomial& poly) {
  double mean = 0.0;
  for (int k = 0; k <= poly.degree; k += 2) {
    mean += poly.c[k] * (k == 0 ? 1.0 : special::alpha_q(n, k));
  }
  return mean;
}

// int t^k dsigma.
double t_moment(int n, int k) {
  if (k == 0) return 1.0;
  return k % 2 == 1 ? 0.0 : special::alpha_q(n, k);
}

using Moments = std::array<double, kMaxDegree + 2>;

// int P_h(r e_n, t) t^k dsigma for k = 0..kMaxDegree, graded toward +-1
// where the kernel concentrates.
Moments kernel_moments(const BallContext& ctx, double r, int order) {
  Moments m{};
  for (int k = 0; k <= kMaxDegree; ++k) {
    m[k] = quadrature::integrate_piecewise(
        ctx.n(), quadrature::panel_order_for(order),
        [&](double t) {
          return kernel::poisson_szego_axis(ctx, r, t) * std::pow(t, k);
        },
        {});
  }
  return m;
}

double dot(const Polynomial& poly, const Moments& m, int shift = 0) {
  double sum = 0.0;
  for (int k = 0; k <= poly.degree; ++k) sum += poly.c[k] * m[k + shift];
  return sum;
}

struct Draw {
  Polynomial poly;
  std::vector<quadrature::Breakpoint> roots;
};

Draw make_draw(int n, std::uint64_t seed, std::uint64_t index, bool center) {
  Draw draw{draw_polynomial(seed, index), {}};
  if (center) draw.poly.c[0] -= polynomial_mean(n, draw.poly);
  for (double root : real_roots(draw.poly)) draw.roots.push_back({root, 1.0});
  return draw;
}

ZonalBoundaryFunction to_function(const BallContext& ctx, Draw draw, bool center,
                                  int order) {
  const double mean = center ? 0.0 : polynomial_mean(ctx.n(), draw.poly);
  return ZonalBoundaryFunction(ctx, draw.poly, std::move(draw.roots), order, mean);
}

// c_n int over the cap {s * t >= 1 - w} of f(t) (1 - t^2)^((n-3)/2) dt,
// s = +-1, integrating in the distance to the pole.
double cap_integral(int n, double w, double s, int order,
                    const std::function<double(double)>& f) {
  const double beta = 0.5 * (n - 3);
  const auto rule = quadrature::gauss_jacobi(quadrature::panel_order_for(order),
                                             beta, 0.0);
  double sum = 0.0;
  for (std::size_t j = 0; j < rule->nodes.size(); ++j) {
    // distance to the pole d = w (1 - x) / 2, t = s (1 - d)
    const double d = 0.5 * w * (1.0 - rule->nodes[j]);
    const double t = s * (1.0 - d);
    sum += rule->weights[j] * std::pow(2.0 - d, beta) * f(t);
  }
  return quadrature::zonal_normalization(n) * std::pow(0.5 * w, 1.0 + beta) *
         sum;
}

double cap_width(int i) {
  require(i >= 2, "cap index must be >= 2");
  return 1.0 / (2.0 * static_cast<double>(i) * static_cast<double>(i));
}

template <typename Score>
RatioCheckReport run_ratio_check(int count, Score&& score) {
  require(count >= 1, "count must be >= 1");
  std::vector<double> ratios(static_cast<std::size_t>(count));
  parallel_for(ratios.size(), [&](std::size_t k) { ratios[k] = score(k); });
  RatioCheckReport report{count, 0, 0.0};
  for (double ratio : ratios) {
    if (ratio > 1.0 + kBoundTolerance) ++report.violations;
    report.max_ratio = std::max(report.max_ratio, ratio);
  }
  return report;
}

}  // namespace

ZonalBoundaryFunction::ZonalBoundaryFunction(
    BallContext ctx, Profile g, std::vector<quadrature::Breakpoint> breaks,
    int order, std::optional<double> known_mean)
    : ctx_(ctx), g_(std::move(g)), breaks_(std::move(breaks)), order_(order) {
  require(order_ >= 2, "quadrature order must be >= 2");
  std::sort(breaks_.begin(), breaks_.end(),
            [](const auto& a, const auto& b) { return a.t < b.t; });
  mean_ = known_mean ? *known_mean : integrate([this](double t) { return g_(t); });
  norm_ = compute_norm();
  if (!std::isfinite(norm_)) {
    fail(ErrorKind::quadrature, "boundary function norm is not finite");
  }
}

double ZonalBoundaryFunction::integrate(const quadrature::Integrand& f) const {
  if (breaks_.empty()) {
    return quadrature::integrate_zonal(*quadrature::zonal_rule(ctx_.n(), order_),
                                       f);
  }
  return quadrature::integrate_piecewise(
      ctx_.n(), quadrature::panel_order_for(order_), f, breaks_);
}

double ZonalBoundaryFunction::compute_norm() const {
  const double p = ctx_.p();
  if (ctx_.p_is_inf()) {
    // Dense scan plus breakpoints, then a golden-section polish around the
    // largest sample.
    double best_t = -1.0;
    double best = 0.0;
    auto consider = [&](double t) {
      const double v = std::abs(g_(t));
      if (v > best) {
        best = v;
        best_t = t;
      }
    };
    for (int i = 0; i < kSupScanPoints; ++i) {
      consider(-1.0 + 2.0 * i / (kSupScanPoints - 1));
    }
    for (const auto& b : breaks_) {
      for (double t : {std::nextafter(b.t, -2.0), std::nextafter(b.t, 2.0)}) {
        if (t >= -1.0 && t <= 1.0) consider(t);
      }
    }
    const double h = 2.0 / (kSupScanPoints - 1);
    const double lo = std::max(-1.0, best_t - h);
    const double hi = std::min(1.0, best_t + h);
    if (hi > lo) {
      const auto polished = golden_section_minimize(
          [&](double t) { return -std::abs(g_(t)); }, lo, hi, 1e-12);
      best = std::max(best, -polished.value);
    }
    return best;
  }
  std::vector<quadrature::Breakpoint> scaled = breaks_;
  for (auto& b : scaled) b.exponent *= p;
  const double integral =
      scaled.empty()
          ? quadrature::integrate_zonal(*quadrature::zonal_rule(ctx_.n(), order_),
                                        [&](double t) {
                                          return std::pow(std::abs(g_(t)), p);
                                        })
          : quadrature::integrate_piecewise(
                ctx_.n(), quadrature::panel_order_for(order_),
                [&](double t) { return std::pow(std::abs(g_(t)), p); }, scaled);
  return std::pow(integral, 1.0 / p);
}

ZonalBoundaryFunction ZonalBoundaryFunction::centered_copy() const {
  const double m = mean_;
  Profile g = g_;
  Profile shifted = [g, m](double t) { return g(t) - m; };
  std::vector<quadrature::Breakpoint> breaks;
  for (const auto& b : breaks_) {
    const bool integral = b.exponent >= 0.0 && b.exponent == std::floor(b.exponent);
    breaks.push_back({b.t, integral ? 0.0 : b.exponent});
  }
  for (double root : sign_changes(shifted)) {
    const bool known = std::any_of(breaks_.begin(), breaks_.end(), [&](const auto& b) {
      return std::abs(b.t - root) <= 1e-12;
    });
    if (!known) breaks.push_back({root, 1.0});
  }
  return ZonalBoundaryFunction(ctx_, std::move(shifted), std::move(breaks), order_);
}

double poisson_integral_axis(const ZonalBoundaryFunction& phi, double r) {
  require(r >= 0.0 && r < 1.0, "radius must satisfy 0 <= r < 1");
  const BallContext& ctx = phi.ctx();
  return phi.integrate([&](double t) {
    return kernel::poisson_szego_axis(ctx, r, t) * phi(t);
  });
}

ZonalBoundaryFunction extremal_phi(const BallContext& ctx, double r, int order) {
  require(ctx.p_is_interior(), "extremal_phi needs 1 < p < inf");
  require(r > 0.0 && r < 1.0, "extremal_phi needs 0 < r < 1");
  const double a_star = solver::solve_a_star(ctx, r, order);
  const double e = ctx.q() - 1.0;  // q / p
  std::vector<quadrature::Breakpoint> breaks;
  if (auto t0 = kernel::crossing_point(ctx, r, a_star)) {
    breaks.push_back({*t0, e});
  }
  return ZonalBoundaryFunction(
      ctx,
      [ctx, r, a_star, e](double t) {
        const double d = kernel::poisson_szego_axis(ctx, r, t) - a_star;
        return std::copysign(std::pow(std::abs(d), e), d);
      },
      std::move(breaks), order);
}

ZonalBoundaryFunction gradient_extremal(const BallContext& ctx, int order) {
  require(!ctx.p_is_one(), "the p = 1 gradient bound has no extremal datum");
  const double e = ctx.q() - 1.0;
  return ZonalBoundaryFunction(
      ctx,
      [e](double t) {
        if (e == 0.0) return sign(t);
        return std::copysign(std::pow(std::abs(t), e), t);
      },
      {{0.0, e}}, order);
}

SharpnessReport verify_sharpness(const BallContext& ctx, double r, int order) {
  require(r > 0.0 && r < 1.0, "verify_sharpness needs 0 < r < 1");
  const int n = ctx.n();
  double bound = 0.0;
  double attained = 0.0;
  double u0 = 0.0;
  if (ctx.p_is_one()) {
    const auto phi = cap_sequence_function(n, kSharpnessCapIndex, order);
    bound = solver::g_1_closed(n, r).g_value * phi.norm();
    attained = minimizing_sequence_p1(n, r, kSharpnessCapIndex, order);
    u0 = phi.mean();
  } else if (ctx.p_is_inf()) {
    const auto closed = solver::g_inf_closed(n, r);
    const auto t0 = kernel::crossing_point(ctx, r, closed.a_star);
    const double split = t0.value_or(0.0);
    const ZonalBoundaryFunction phi(
        ctx, [split](double t) { return sign(t - split); }, {{split, 0.0}},
        order);
    bound = closed.g_value * phi.norm();
    attained = poisson_integral_axis(phi, r);
    u0 = phi.mean();
  } else {
    const auto phi = extremal_phi(ctx, r, order);
    bound = solver::g_p(ctx, r, order).g_value * phi.norm();
    attained = poisson_integral_axis(phi, r);
    u0 = phi.mean();
  }
  const double gap = bound > 0.0 ? std::abs(attained - bound) / bound : 0.0;
  return {r, bound, attained, u0, gap};
}

double grad_at_origin(const ZonalBoundaryFunction& phi) {
  const int n = phi.ctx().n();
  return 2.0 * (n - 1) *
         std::abs(phi.integrate([&](double t) { return t * phi(t); }));
}

double bound_ratio(const ZonalBoundaryFunction& phi, double r, double g_value) {
  const double norm = phi.norm();
  if (norm == 0.0 || g_value == 0.0) return 0.0;
  return std::abs(poisson_integral_axis(phi, r)) / (g_value * norm);
}

ZonalBoundaryFunction random_polynomial(const BallContext& ctx,
                                        std::uint64_t seed, std::uint64_t index,
                                        bool center, int order) {
  return to_function(ctx, make_draw(ctx.n(), seed, index, center), center,
                     order);
}

std::vector<RatioCheckReport> random_bound_check(
    const BallContext& ctx, std::span<const double> radii, int count,
    std::uint64_t seed, int order) {
  require(count >= 1, "count must be >= 1");
  std::vector<double> bounds;
  std::vector<Moments> moments;
  for (double r : radii) {
    require(r >= 0.0 && r < 1.0, "radius must satisfy 0 <= r < 1");
    bounds.push_back(solver::g_p(ctx, r, order).g_value);
    moments.push_back(kernel_moments(ctx, r, order));
  }
  const std::size_t m = radii.size();
  std::vector<double> ratios(static_cast<std::size_t>(count) * m, 0.0);
  parallel_for(static_cast<std::size_t>(count), [&](std::size_t k) {
    Draw draw = make_draw(ctx.n(), seed, k, true);
    const Polynomial poly = draw.poly;
    const double norm = to_function(ctx, std::move(draw), true, order).norm();
    if (norm == 0.0) return;
    for (std::size_t j = 0; j < m; ++j) {
      if (bounds[j] == 0.0) continue;
      ratios[k * m + j] = std::abs(dot(poly, moments[j])) / (bounds[j] * norm);
    }
  });
  std::vector<RatioCheckReport> reports(m, RatioCheckReport{count, 0, 0.0});
  for (std::size_t k = 0; k < static_cast<std::size_t>(count); ++k) {
    for (std::size_t j = 0; j < m; ++j) {
      const double ratio = ratios[k * m + j];
      if (ratio > 1.0 + kBoundTolerance) ++reports[j].violations;
      reports[j].max_ratio = std::max(reports[j].max_ratio, ratio);
    }
  }
  return reports;
}

RatioCheckReport random_bound_check(const BallContext& ctx, double r, int count,
                                    std::uint64_t seed, int order) {
  return random_bound_check(ctx, std::span<const double>(&r, 1), count, seed,
                            order)
      .front();
}

RatioCheckReport random_gradient_check(const BallContext& ctx, int count,
                                       std::uint64_t seed, int order) {
  const double constant = solver::grad_constant(ctx);
  Moments exact{};
  for (int k = 0; k <= kMaxDegree + 1; ++k) exact[k] = t_moment(ctx.n(), k);
  return run_ratio_check(count, [&](std::size_t k) {
    Draw draw = make_draw(ctx.n(), seed, k, true);
    const Polynomial poly = draw.poly;
    const double norm = to_function(ctx, std::move(draw), true, order).norm();
    if (norm == 0.0) return 0.0;
    const double grad = 2.0 * (ctx.n() - 1) * std::abs(dot(poly, exact, 1));
    return grad / (constant * norm);
  });
}

ZonalBoundaryFunction cap_sequence_function(int n, int i, int order) {
  const double w = cap_width(i);
  const double edge = 1.0 - w;
  if (!(edge < 1.0)) {
    fail(ErrorKind::quadrature,
         "cap index " + std::to_string(i) + " is below t resolution");
  }
  auto one = [](double) { return 1.0; };
  const double upper = cap_integral(n, w, 1.0, order, one);
  const double lower = cap_integral(n, w, -1.0, order, one);
  if (!(upper > 0.0) || !(lower > 0.0)) {
    fail(ErrorKind::quadrature,
         "cap measure underflow at index " + std::to_string(i));
  }
  return ZonalBoundaryFunction(
      BallContext(n, 1.0),
      [edge, upper, lower](double t) {
        if (t >= edge) return 0.5 / upper;
        if (t <= -edge) return -0.5 / lower;
        return 0.0;
      },
      {{-edge, 0.0}, {edge, 0.0}}, order);
}

double minimizing_sequence_p1(int n, double r, int i, int order) {
  require(r > 0.0 && r < 1.0, "minimizing sequence needs 0 < r < 1");
  const double w = cap_width(i);
  if (!(1.0 - w < 1.0)) {
    fail(ErrorKind::quadrature,
         "cap index " + std::to_string(i) + " is below t resolution");
  }
  const BallContext ctx(n, 1.0);
  auto one = [](double) { return 1.0; };
  auto kernel = [&](double t) { return kernel::poisson_szego_axis(ctx, r, t); };
  const double upper = cap_integral(n, w, 1.0, order, one);
  const double lower = cap_integral(n, w, -1.0, order, one);
  if (!(upper > 0.0) || !(lower > 0.0) || !std::isfinite(upper) ||
      !std::isfinite(lower)) {
    fail(ErrorKind::quadrature,
         "cap measure underflow at index " + std::to_string(i));
  }
  return 0.5 * cap_integral(n, w, 1.0, order, kernel) / upper -
         0.5 * cap_integral(n, w, -1.0, order, kernel) / lower;
}

L2GradientCheck l2_gradient_check(const ZonalBoundaryFunction& phi) {
  const BallContext& ctx = phi.ctx();
  require(ctx.p() == 2.0, "the L^2 gradient check needs p = 2");
  const int n = ctx.n();
  const double lhs = grad_at_origin(phi.centered_copy());
  const double m = phi.mean();
  const double spread = std::sqrt(std::max(0.0, phi.norm() * phi.norm() - m * m));
  const double sqrt_form = std::sqrt(2.0 * (n - 1)) * spread;
  const double sharp_form = solver::grad_constant(ctx) * spread;
  const double slack = 1.0 + kBoundTolerance;
  return {lhs, sqrt_form, sharp_form, lhs <= sqrt_form * slack + 1e-15,
          lhs <= sharp_form * slack + 1e-15};
}

L2GradientReport l2_gradient_report(int n, int count, std::uint64_t seed,
                                 int order) {
  require(count >= 1, "count must be >= 1");
  const BallContext ctx(n, 2.0);
  std::vector<L2GradientCheck> checks(static_cast<std::size_t>(count));
  parallel_for(checks.size(), [&](std::size_t k) {
    checks[k] = l2_gradient_check(random_polynomial(ctx, seed, k, false, order));
  });

  L2GradientReport report{};
  report.n = n;
  report.count = count;
  report.constant_sqrt_form = std::sqrt(2.0 * (n - 1));
  report.constant_sharp_form = solver::grad_constant(ctx);
  report.linear_profile = l2_gradient_check(
      ZonalBoundaryFunction(ctx, [](double t) { return t; }, {}, order));
  auto ratio = [](double lhs, double rhs) {
    return rhs > 0.0 ? lhs / rhs : 0.0;
  };
  for (const auto& c : checks) {
    report.holds_sqrt_form += c.holds_sqrt_form ? 1 : 0;
    report.holds_sharp_form += c.holds_sharp_form ? 1 : 0;
    report.max_ratio_sqrt_form =
        std::max(report.max_ratio_sqrt_form, ratio(c.lhs, c.rhs_sqrt_form));
    report.max_ratio_sharp_form =
        std::max(report.max_ratio_sharp_form, ratio(c.lhs, c.rhs_sharp_form));
  }
  return report;
}

std::string L2GradientReport::summary() const {
  const bool sqrt_all = holds_sqrt_form == count && linear_profile.holds_sqrt_form;
  const bool sharp_all =
      holds_sharp_form == count && linear_profile.holds_sharp_form;
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "n=%d: sqrt(2(n-1))=%.17g holds on %d/%d random cases%s; "
                "2(n-1)/sqrt(n)=%.17g holds on %d/%d random cases%s; "
                "g(t)=t gives lhs=%.17g vs %.17g and %.17g",
                n, constant_sqrt_form, holds_sqrt_form, count,
                sqrt_all ? " and on g(t)=t" : ", fails on g(t)=t",
                constant_sharp_form, holds_sharp_form, count,
                sharp_all ? " and on g(t)=t" : ", fails on g(t)=t",
                linear_profile.lhs, linear_profile.rhs_sqrt_form,
                linear_profile.rhs_sharp_form);
  return buf;
}

}  // namespace hypschwarz::verify
