#include <cmath>
#include <numbers>
#include <vector>

#include "context.hpp"
#include "doctest.h"
#include "error.hpp"
#include "kernel.hpp"
#include "oracles.hpp"
#include "quadrature.hpp"
#include "solver.hpp"

using namespace hypschwarz;

namespace {

double beta_function(double a, double b) {
  return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

}  // namespace

TEST_SUITE("quadrature") {
  TEST_CASE("Gauss-Jacobi rules are exact on polynomials") {
    for (double alpha : {-0.5, 0.0, 0.5, 1.0, 2.5, 6.0}) {
      for (int order : {4, 17, 64}) {
        const auto rule = quadrature::compute_gauss_jacobi(order, alpha, alpha);
        for (int j = 0; 2 * j <= 2 * order - 1; ++j) {
          double sum = 0.0;
          for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            sum += rule.weights[i] * std::pow(rule.nodes[i], 2 * j);
          }
          CAPTURE(alpha);
          CAPTURE(order);
          CAPTURE(j);
          const double want = beta_function(j + 0.5, alpha + 1.0);
          CHECK(sum == doctest::Approx(want).epsilon(1e-12));
        }
      }
    }
  }

  TEST_CASE("Gauss-Jacobi rules with unequal exponents") {
    for (double alpha : {-0.5, 0.0, 1.5, 7.0}) {
      for (double beta : {-0.3, 0.5, 4.0}) {
        const auto rule = quadrature::compute_gauss_jacobi(32, alpha, beta);
        double mass = 0.0;
        double first = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
          mass += rule.weights[i];
          first += rule.weights[i] * rule.nodes[i];
        }
        const double want_mass =
            std::pow(2.0, alpha + beta + 1.0) * beta_function(alpha + 1.0, beta + 1.0);
        CAPTURE(alpha);
        CAPTURE(beta);
        CHECK(mass == doctest::Approx(want_mass).epsilon(1e-12));
        CHECK(first == doctest::Approx(want_mass * (beta - alpha) / (alpha + beta + 2.0))
                           .epsilon(1e-11));
      }
    }
  }

  TEST_CASE("zonal rules have positive weights, unit sum and increasing nodes") {
    for (int n = 3; n <= 12; ++n) {
      for (int order : {8, 128, 512}) {
        const auto rule = quadrature::zonal_rule(n, order);
        double sum = 0.0;
        for (std::size_t i = 0; i < rule->weights.size(); ++i) {
          CHECK(rule->weights[i] > 0.0);
          sum += rule->weights[i];
          if (i > 0) CHECK(rule->nodes[i] > rule->nodes[i - 1]);
        }
        CHECK(std::abs(sum - 1.0) <= 1e-12);
      }
    }
  }

  TEST_CASE("zonal normalization constant") {
    for (int n = 3; n <= 10; ++n) {
      CHECK(quadrature::zonal_normalization(n) ==
            doctest::Approx(oracle::zonal_constant(n)).epsilon(1e-13));
    }
  }

  TEST_CASE("low moments") {
    for (int n : {3, 4, 5, 9}) {
      const auto& rule = *quadrature::zonal_rule(n, 128);
      CHECK(quadrature::integrate_zonal(rule, [](double) { return 1.0; }) ==
            doctest::Approx(1.0).epsilon(1e-14));
      CHECK(std::abs(quadrature::integrate_zonal(rule, [](double t) { return t; })) <= 1e-15);
      CHECK(quadrature::integrate_zonal(rule, [](double t) { return t * t; }) ==
            doctest::Approx(1.0 / n).epsilon(1e-13));
      CHECK(quadrature::integrate_zonal(rule, [](double) { return 3.25; }) ==
            doctest::Approx(3.25).epsilon(1e-14));
    }
  }

  TEST_CASE("kernel integrates to one") {
    const BallContext ctx(3, 2.0);
    const double v = quadrature::integrate_zonal(
        *quadrature::zonal_rule(3, 128),
        [&](double t) { return kernel::poisson_szego_axis(ctx, 0.7, t); });
    CHECK(std::abs(v - 1.0) <= 1e-10);
  }

  TEST_CASE("absolute value with a breakpoint at the kink") {
    const double v = quadrature::integrate_with_breakpoint(
        3, 128, [](double t) { return std::abs(t); }, 0.0, 1.0);
    CHECK(std::abs(v - 0.5) <= 1e-8);
    const double plain = quadrature::integrate_zonal(
        *quadrature::zonal_rule(3, 128), [](double t) { return std::abs(t); });
    CHECK(std::abs(plain - 0.5) <= 1e-4);
  }

  TEST_CASE("doubling the order leaves smooth integrals unchanged") {
    for (int n : {3, 4, 5}) {
      const BallContext ctx(n, 2.0);
      for (double r : {0.2, 0.5, 0.7}) {
        auto f = [&](double t) {
          const double k = kernel::poisson_szego_axis(ctx, r, t);
          return k * k + std::cos(3.0 * t);
        };
        const double lo = quadrature::integrate_zonal(*quadrature::zonal_rule(n, 128), f);
        const double hi = quadrature::integrate_zonal(*quadrature::zonal_rule(n, 256), f);
        CAPTURE(n);
        CAPTURE(r);
        CHECK(std::abs(lo - hi) <= 1e-12 * std::max(1.0, std::abs(hi)));
      }
    }
  }

  TEST_CASE("breakpoints do not disturb smooth integrands") {
    for (int n : {3, 4, 6}) {
      auto f = [](double t) { return std::exp(t) * (1.0 + t * t); };
      const double plain = quadrature::integrate_with_breakpoint(n, 128, f, std::nullopt);
      const double rule = quadrature::integrate_zonal(*quadrature::zonal_rule(n, 128), f);
      CHECK(plain == rule);
      for (double t0 : {-0.9, -0.2, 0.0, 0.55, 0.999}) {
        CAPTURE(n);
        CAPTURE(t0);
        const double split = quadrature::integrate_with_breakpoint(n, 128, f, t0);
        CHECK(std::abs(split - rule) <= 1e-10);
      }
    }
  }

  TEST_CASE("inverse square root singularity") {
    auto f = [](double t) { return std::pow(std::abs(t - 0.3), -0.5); };
    const double got = quadrature::integrate_with_breakpoint(3, 128, f, 0.3, -0.5);
    const double brute = oracle::zonal_midpoint(3, f, {0.3}, 10'000'000);
    CHECK(oracle::relative_error(got, brute) <= 1e-6);
  }

  TEST_CASE("negative power of the shifted kernel") {
    const int n = 3;
    const double r = 0.5;
    const BallContext ctx(n, 3.0);
    const double a = solver::solve_a_star(ctx, r);
    const auto t0 = kernel::crossing_point(ctx, r, a);
    REQUIRE(t0.has_value());
    auto f = [&](double t) {
      return std::pow(std::abs(kernel::poisson_szego_axis(ctx, r, t) - a), -0.5);
    };
    const double got = quadrature::integrate_with_breakpoint(n, 128, f, *t0, -0.5);
    CHECK(std::isfinite(got));
    const double brute = oracle::zonal_midpoint(
        n, [&](double t) { return std::pow(std::abs(oracle::kernel(n, r, t) - a), -0.5); },
        {*t0}, 10'000'000);
    CHECK(oracle::relative_error(got, brute) <= 1e-6);
  }

  TEST_CASE("several breakpoints with mixed exponents") {
    for (int n : {3, 5}) {
      auto f = [](double t) {
        return std::pow(std::abs(t + 0.4), 0.3) * std::pow(std::abs(t - 0.6), -0.25) *
               std::exp(t) * (t > 0.1 ? 1.0 : -2.0);
      };
      const std::vector<quadrature::Breakpoint> breaks{{-0.4, 0.3}, {0.1, 0.0}, {0.6, -0.25}};
      const double got = quadrature::integrate_piecewise(n, 32, f, breaks);
      const double brute = oracle::zonal_midpoint(n, f, {-0.4, 0.1, 0.6}, 10'000'000);
      CAPTURE(n);
      CHECK(oracle::relative_error(got, brute) <= 1e-7);
    }
  }

  TEST_CASE("breakpoints at the poles") {
    auto f = [](double t) { return std::pow(1.0 - t, 0.5); };
    const double got = quadrature::integrate_piecewise(3, 32, f, std::vector<quadrature::Breakpoint>{{1.0, 0.5}});
    // n = 3: c_3 = 1/2, int_{-1}^{1} sqrt(1 - t) dt / 2 = (2^(3/2) * 2/3) / 2.
    CHECK(got == doctest::Approx(std::pow(2.0, 1.5) / 3.0).epsilon(1e-13));
  }

  TEST_CASE("rejects bad rules and non-finite samples") {
    CHECK_THROWS_AS(quadrature::compute_gauss_jacobi(0, 0.0, 0.0), Error);
    CHECK_THROWS_AS(quadrature::compute_gauss_jacobi(8, -1.0, 0.0), Error);
    CHECK_THROWS_AS(quadrature::build_rule(2, 16), Error);
    CHECK_THROWS_AS(quadrature::integrate_zonal(*quadrature::zonal_rule(3, 16),
                                                [](double) { return std::nan(""); }),
                    Error);
  }
}
