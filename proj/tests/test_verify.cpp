#include <cmath>
#include <vector>

#include "context.hpp"
#include "doctest.h"
#include "error.hpp"
#include "kernel.hpp"
#include "oracles.hpp"
#include "solver.hpp"
#include "special.hpp"
#include "verify.hpp"

using namespace hypschwarz;
using verify::ZonalBoundaryFunction;

TEST_SUITE("verify") {
  TEST_CASE("constant data reproduce the constant") {
    for (int n : {3, 5}) {
      const ZonalBoundaryFunction phi(BallContext(n, 2.0), [](double) { return 1.75; });
      CHECK(phi.mean() == doctest::Approx(1.75).epsilon(1e-14));
      CHECK(phi.norm() == doctest::Approx(1.75).epsilon(1e-14));
      for (double r : {0.0, 0.3, 0.8}) {
        CHECK(verify::poisson_integral_axis(phi, r) == doctest::Approx(1.75).epsilon(1e-10));
      }
    }
  }

  TEST_CASE("sign datum gives the p = inf bound") {
    const ZonalBoundaryFunction phi(BallContext(3, kInf),
                                    [](double t) { return t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0); },
                                    {{0.0, 0.0}});
    CHECK(phi.norm() == doctest::Approx(1.0).epsilon(1e-12));
    for (double r : {0.1, 0.5, 0.8}) {
      CHECK(verify::poisson_integral_axis(phi, r) ==
            doctest::Approx(2.0 * r / (1.0 + r * r)).epsilon(1e-10));
    }
  }

  TEST_CASE("Poisson integral against the midpoint oracle") {
    for (std::uint64_t index : {0u, 3u, 11u}) {
      const auto phi = verify::random_polynomial(BallContext(4, 3.0), 9, index, true);
      for (double r : {0.2, 0.7}) {
        std::vector<double> cuts;
        for (const auto& b : phi.breaks()) cuts.push_back(b.t);
        const double brute = oracle::zonal_midpoint(
            4, [&](double t) { return oracle::kernel(4, r, t) * phi(t); }, cuts);
        CAPTURE(index);
        CAPTURE(r);
        CHECK(std::abs(verify::poisson_integral_axis(phi, r) - brute) <= 1e-10);
      }
    }
  }

  TEST_CASE("centered data vanish at the origin") {
    for (std::uint64_t index = 0; index < 20; ++index) {
      const auto phi = verify::random_polynomial(BallContext(3, 2.0), 5, index, true);
      CHECK(phi.centered());
      CHECK(std::abs(verify::poisson_integral_axis(phi, 0.0)) <= 1e-10);
      const auto raw = verify::random_polynomial(BallContext(3, 2.0), 5, index, false);
      CHECK(std::abs(verify::poisson_integral_axis(raw.centered_copy(), 0.0)) <= 1e-10);
    }
  }

  TEST_CASE("norms against the midpoint oracle") {
    for (double p : {1.0, 1.5, 2.0, 4.0}) {
      const auto phi = verify::random_polynomial(BallContext(3, p), 21, 4, true);
      std::vector<double> cuts;
      for (const auto& b : phi.breaks()) cuts.push_back(b.t);
      const double brute = std::pow(
          oracle::zonal_midpoint(3, [&](double t) { return std::pow(std::abs(phi(t)), p); }, cuts),
          1.0 / p);
      CAPTURE(p);
      CHECK(phi.norm() == doctest::Approx(brute).epsilon(1e-10));
    }
    const auto sup = verify::random_polynomial(BallContext(3, kInf), 21, 4, true);
    double brute_sup = 0.0;
    for (int i = 0; i <= 200000; ++i) {
      brute_sup = std::max(brute_sup, std::abs(sup(-1.0 + 2.0 * i / 200000.0)));
    }
    CHECK(sup.norm() == doctest::Approx(brute_sup).epsilon(1e-9));
  }

  TEST_CASE("centered copies keep accurate norms") {
    for (std::uint64_t index : {1u, 6u, 13u}) {
      const auto raw = verify::random_polynomial(BallContext(3, 1.5), 5, index, false);
      const auto copy = raw.centered_copy();
      const double m = raw.mean();
      const double brute = std::pow(
          oracle::zonal_midpoint(
              3, [&](double t) { return std::pow(std::abs(raw(t) - m), 1.5); }, {}, 4'000'000),
          1.0 / 1.5);
      CAPTURE(index);
      CHECK(copy.norm() == doctest::Approx(brute).epsilon(1e-9));
    }
  }

  TEST_CASE("random draws are reproducible") {
    const BallContext ctx(4, 3.0);
    for (std::uint64_t index : {0u, 1u, 999u}) {
      const auto a = verify::random_polynomial(ctx, 42, index, true);
      const auto b = verify::random_polynomial(ctx, 42, index, true);
      CHECK(a.norm() == b.norm());
      for (double t : {-0.9, 0.1, 0.77}) CHECK(a(t) == b(t));
    }
    const auto other = verify::random_polynomial(ctx, 43, 0, true);
    CHECK(other(0.3) != verify::random_polynomial(ctx, 42, 0, true)(0.3));
  }

  TEST_CASE("extremal datum is centered and attains the bound") {
    const BallContext ctx(3, 2.0);
    const auto phi = verify::extremal_phi(ctx, 0.5);
    CHECK(std::abs(verify::poisson_integral_axis(phi, 0.0)) <= 1e-8);
    const double ratio = verify::poisson_integral_axis(phi, 0.5) / phi.norm();
    CHECK(oracle::relative_error(ratio, solver::g_p(ctx, 0.5).g_value) <= 1e-7);
  }

  TEST_CASE("sharpness reports") {
    const auto a = verify::verify_sharpness(BallContext(3, 2.0), 0.5);
    CHECK(a.relative_gap <= 1e-6);
    const auto b = verify::verify_sharpness(BallContext(4, 3.0), 0.3);
    CHECK(b.relative_gap <= 1e-6);
    const auto c = verify::verify_sharpness(BallContext(3, kInf), 0.5);
    CHECK(c.attained == doctest::Approx(0.8).epsilon(1e-10));
    CHECK(c.relative_gap <= 1e-6);
    const auto d = verify::verify_sharpness(BallContext(3, 1.0), 0.5);
    CHECK(d.relative_gap <= 1e-6);
    CHECK(d.attained <= d.g_bound * (1.0 + 1e-12));
  }

  TEST_CASE("sharpness on the interior grid") {
    for (int n : {3, 4, 5}) {
      for (double p : {1.5, 2.0, 3.0, 5.0}) {
        for (double r : {0.2, 0.5, 0.8}) {
          const auto rep = verify::verify_sharpness(BallContext(n, p), r);
          CAPTURE(n);
          CAPTURE(p);
          CAPTURE(r);
          CHECK(rep.relative_gap >= 0.0);
          CHECK(rep.relative_gap <= 1e-6);
          CHECK(std::abs(rep.u_at_zero) <= 1e-8);
        }
      }
    }
  }

  TEST_CASE("gradient at the origin") {
    const BallContext ctx(3, 2.0);
    const ZonalBoundaryFunction even(ctx, [](double t) { return t * t - 0.2 * std::cos(t); });
    CHECK(std::abs(verify::grad_at_origin(even)) <= 1e-14);
    const ZonalBoundaryFunction linear(ctx, [](double t) { return t; });
    CHECK(verify::grad_at_origin(linear) == doctest::Approx(4.0 / 3.0).epsilon(1e-13));
    for (int n : {3, 4, 5}) {
      for (double p : {1.5, 2.0, 3.0}) {
        const BallContext c(n, p);
        const double q = c.q();
        const ZonalBoundaryFunction phi(
            c, [&](double t) { return std::copysign(std::pow(std::abs(t), q / p), t); },
            {{0.0, q / p}});
        const double alpha = special::alpha_q(n, q);
        CAPTURE(n);
        CAPTURE(p);
        CHECK(verify::grad_at_origin(phi) ==
              doctest::Approx(2.0 * (n - 1) * alpha).epsilon(1e-10));
        CHECK(verify::grad_at_origin(phi) / phi.norm() ==
              doctest::Approx(2.0 * (n - 1) * std::pow(alpha, 1.0 / q)).epsilon(1e-10));
      }
    }
  }

  TEST_CASE("gradient extremal attains the constant") {
    for (int n : {3, 4, 5}) {
      for (double p : {1.5, 2.0, 3.0, kInf}) {
        const BallContext ctx(n, p);
        const auto phi = verify::gradient_extremal(ctx);
        CAPTURE(n);
        CAPTURE(p);
        CHECK(oracle::relative_error(verify::grad_at_origin(phi) / phi.norm(),
                                     solver::grad_constant(ctx)) <= 1e-9);
      }
    }
  }

  TEST_CASE("bound ratios") {
    const BallContext ctx(3, 2.0);
    const ZonalBoundaryFunction zero(ctx, [](double) { return 0.0; });
    CHECK(verify::bound_ratio(zero, 0.5, 1.0) == 0.0);
    const auto extremal = verify::extremal_phi(ctx, 0.5);
    const double g = solver::g_p(ctx, 0.5).g_value;
    CHECK(verify::bound_ratio(extremal, 0.5, g) >= 1.0 - 1e-6);
  }

  TEST_CASE("random bound check") {
    const auto rep = verify::random_bound_check(BallContext(3, 2.0), 0.5, 1000, 42);
    CHECK(rep.count == 1000);
    CHECK(rep.violations == 0);
    CHECK(rep.max_ratio <= 1.0 + verify::kBoundTolerance);
    CHECK(rep.max_ratio > 0.5);
  }

  TEST_CASE("random bound check over a grid including p = inf") {
    const std::vector<double> radii{0.2, 0.5, 0.8};
    for (int n : {3, 4, 5}) {
      for (double p : {1.5, 2.0, 3.0, 5.0, kInf}) {
        const auto reps = verify::random_bound_check(BallContext(n, p), radii, 200, 7);
        REQUIRE(reps.size() == radii.size());
        for (std::size_t i = 0; i < reps.size(); ++i) {
          CAPTURE(n);
          CAPTURE(p);
          CAPTURE(radii[i]);
          CHECK(reps[i].violations == 0);
        }
      }
    }
  }

  TEST_CASE("multi-radius check agrees with single-radius checks") {
    const BallContext ctx(4, 3.0);
    const std::vector<double> radii{0.3, 0.6};
    const auto many = verify::random_bound_check(ctx, radii, 50, 11);
    for (std::size_t i = 0; i < radii.size(); ++i) {
      const auto one = verify::random_bound_check(ctx, radii[i], 50, 11);
      CHECK(one.violations == many[i].violations);
      CHECK(one.max_ratio == doctest::Approx(many[i].max_ratio).epsilon(1e-12));
    }
  }

  TEST_CASE("random gradient check") {
    for (int n : {3, 4}) {
      for (double p : {1.0, 1.5, 2.0, 3.0, kInf}) {
        const auto rep = verify::random_gradient_check(BallContext(n, p), 1000, 42);
        CAPTURE(n);
        CAPTURE(p);
        CHECK(rep.violations == 0);
        CHECK(rep.max_ratio <= 1.0 + verify::kBoundTolerance);
      }
    }
  }

  TEST_CASE("cap sequence data") {
    for (int n : {3, 4}) {
      for (int i : {2, 8, 64}) {
        const auto phi = verify::cap_sequence_function(n, i);
        ZonalBoundaryFunction l1(BallContext(n, 1.0), [&](double t) { return phi(t); },
                                 std::vector<quadrature::Breakpoint>(phi.breaks().begin(),
                                                                     phi.breaks().end()));
        CAPTURE(n);
        CAPTURE(i);
        CHECK(l1.norm() == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(std::abs(phi.mean()) <= 1e-10);
      }
    }
  }

  TEST_CASE("cap sequence increases toward the p = 1 bound") {
    for (int n : {3, 4}) {
      for (double r : {0.3, 0.5, 0.8}) {
        const double g1 = solver::g_1_closed(n, r).g_value;
        double previous = -1.0;
        for (int i : {2, 4, 8, 16, 32, 64}) {
          const double u = verify::minimizing_sequence_p1(n, r, i);
          CAPTURE(n);
          CAPTURE(r);
          CAPTURE(i);
          CHECK(u >= previous - 1e-9);
          CHECK(u <= g1 * (1.0 + 1e-9));
          previous = u;
        }
      }
    }
    const double u64 = verify::minimizing_sequence_p1(3, 0.5, 64);
    CHECK(oracle::relative_error(u64, 40.0 / 9.0) <= 0.02);
  }

  TEST_CASE("cap sequence against the midpoint oracle") {
    const int n = 3;
    const int i = 8;
    const double r = 0.5;
    const double edge = 1.0 - 1.0 / (2.0 * i * i);
    const double cap_mass = oracle::zonal_midpoint(
        n, [&](double t) { return t >= edge ? 1.0 : 0.0; }, {edge});
    const double brute = oracle::zonal_midpoint(
        n,
        [&](double t) {
          const double k = oracle::kernel(n, r, t);
          if (t >= edge) return k / (2.0 * cap_mass);
          if (t <= -edge) return -k / (2.0 * cap_mass);
          return 0.0;
        },
        {-edge, edge});
    CHECK(verify::minimizing_sequence_p1(n, r, i) == doctest::Approx(brute).epsilon(1e-9));
  }

  TEST_CASE("cap sequence rejects bad indices") {
    CHECK_THROWS_AS(verify::minimizing_sequence_p1(3, 0.5, 1), Error);
    CHECK_THROWS_AS(verify::minimizing_sequence_p1(3, 0.0, 4), Error);
  }

  TEST_CASE("L2 gradient inequality readings") {
    const BallContext ctx(3, 2.0);
    const ZonalBoundaryFunction constant(ctx, [](double) { return 2.5; });
    const auto flat = verify::l2_gradient_check(constant);
    CHECK(std::abs(flat.lhs) <= 1e-12);
    CHECK(std::abs(flat.rhs_sqrt_form) <= 1e-6);
    CHECK(flat.holds_sqrt_form);
    CHECK(flat.holds_sharp_form);

    const ZonalBoundaryFunction linear(ctx, [](double t) { return t; });
    const auto lin = verify::l2_gradient_check(linear);
    CHECK(lin.lhs == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    CHECK(lin.rhs_sqrt_form == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(lin.rhs_sharp_form == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    CHECK_FALSE(lin.holds_sqrt_form);
    CHECK(lin.holds_sharp_form);
  }

  TEST_CASE("sharp L2 gradient constant holds on random data") {
    for (int n : {3, 4, 5}) {
      const auto rep = verify::l2_gradient_report(n, 1000, 42);
      CAPTURE(n);
      CHECK(rep.count == 1000);
      CHECK(rep.holds_sharp_form == 1000);
      CHECK(rep.max_ratio_sharp_form <= 1.0 + 1e-7);
      CHECK(rep.holds_sqrt_form < 1000);
      CHECK_FALSE(rep.summary().empty());
    }
    const BallContext ctx(3, 2.0);
    for (std::uint64_t index = 0; index < 1000; ++index) {
      const auto phi = verify::random_polynomial(ctx, 42, index, true);
      const auto check = verify::l2_gradient_check(phi);
      CHECK(check.holds_sharp_form);
    }
  }
}
