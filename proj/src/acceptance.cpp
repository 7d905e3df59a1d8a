#include "acceptance.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <exception>
#include <vector>

#include "context.hpp"
#include "kernel.hpp"
#include "minimize.hpp"
#include "objective.hpp"
#include "solver.hpp"
#include "verify.hpp"

namespace hypschwarz::acceptance {
namespace {

constexpr std::array kDimensions{3, 4, 5};
constexpr std::array kInteriorExponents{1.5, 2.0, 3.0, 5.0};
constexpr std::array kGridRadii{0.2, 0.5, 0.8};
constexpr std::array kTableRadii{0.1, 0.25, 0.5, 0.75, 0.9};

std::string format(const char* fmt, ...) {
  char buf[1024];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  return buf;
}

struct Outcome {
  bool passed;
  std::string detail;
};

// Running maximum with the place it was attained.
struct Worst {
  double value = 0.0;
  std::string where = "-";

  void update(double v, const std::string& at) {
    if (!(v <= value)) {
      value = v;
      where = at;
    }
  }
};

std::string cell(int n, double p, double r) {
  return format("n=%d p=%s r=%g", n, format_exponent(p).c_str(), r);
}

Outcome closed_form_infinity() {
  Worst closed;
  Worst numeric;
  for (int n : kDimensions) {
    const BallContext ctx(n, kInf);
    for (double r : kTableRadii) {
      const double elementary = *solver::u_h_elementary(n, r);
      const auto form = solver::g_inf_closed(n, r);
      const double direct = objective::phi({ctx, r}, form.a_star);
      closed.update(std::abs(form.g_value - elementary), cell(n, kInf, r));
      numeric.update(std::abs(direct - elementary), cell(n, kInf, r));
    }
  }
  const double n3 = solver::g_inf_closed(3, 0.5).g_value;
  const double n4 = solver::g_inf_closed(4, 0.5).g_value;
  const double n5 = solver::g_inf_closed(5, 0.5).g_value;
  const bool anchors = std::abs(n3 - 0.8) <= 1e-8 &&
                       std::abs(n4 - 0.89590) <= 2e-5 &&
                       std::abs(n5 - 0.944) <= 1e-8;
  const bool passed = closed.value <= 1e-8 && numeric.value <= 1e-8 && anchors;
  return {passed,
          format("max |closed - elementary| %.3g at %s; max |quadrature - "
                 "elementary| %.3g at %s; r=0.5 gives %.15g, %.15g, %.15g",
                 closed.value, closed.where.c_str(), numeric.value,
                 numeric.where.c_str(), n3, n4, n5)};
}

Outcome closed_form_two() {
  Worst g_dev;
  Worst a_dev;
  for (int n : kDimensions) {
    const BallContext ctx(n, 2.0);
    for (int k = 1; k <= 8; ++k) {
      const double r = 0.1 * k;
      const double a = solver::solve_a_star(ctx, r);
      const double g = objective::phi({ctx, r}, a);
      g_dev.update(std::abs(g - solver::g_2_closed(n, r)), cell(n, 2.0, r));
      a_dev.update(std::abs(a - 1.0), cell(n, 2.0, r));
    }
  }
  return {g_dev.value <= 1e-8 && a_dev.value <= 1e-10,
          format("max |numeric - closed| %.3g at %s; max |a* - 1| %.3g at %s",
                 g_dev.value, g_dev.where.c_str(), a_dev.value,
                 a_dev.where.c_str())};
}

Outcome closed_form_one() {
  Worst sup_dev;
  for (int n : kDimensions) {
    const BallContext ctx(n, 1.0);
    for (double r : kTableRadii) {
      const auto form = solver::g_1_closed(n, r);
      const auto range = kernel::kernel_range(ctx, r);
      const double sup = std::max(std::abs(range.max - form.a_star),
                                  std::abs(range.min - form.a_star));
      sup_dev.update(std::abs(sup - form.g_value), cell(n, 1.0, r));
    }
  }
  const double target = solver::g_1_closed(3, 0.5).g_value;
  bool monotone = true;
  bool below = true;
  double previous = -1.0;
  double last = 0.0;
  for (int i = 2; i <= 64; i *= 2) {
    last = verify::minimizing_sequence_p1(3, 0.5, i);
    monotone = monotone && last >= previous - 1e-9;
    below = below && last <= target * (1.0 + 1e-9);
    previous = last;
  }
  const double gap = (target - last) / target;
  return {sup_dev.value <= 1e-12 && gap <= 0.02 && monotone && below,
          format("max |closed - sup functional| %.3g at %s; cap sequence at "
                 "n=3 r=0.5 reaches %.15g at i=64 (%.3g%% below 40/9), %s, %s",
                 sup_dev.value, sup_dev.where.c_str(), last, 100.0 * gap,
                 monotone ? "nondecreasing" : "NOT monotone",
                 below ? "below G_1" : "ABOVE G_1")};
}

Outcome stationarity() {
  Worst residual;
  Worst golden;
  bool slopes_negative = true;
  bool origin_ok = true;
  for (int n : kDimensions) {
    for (double p : kInteriorExponents) {
      const BallContext ctx(n, p);
      origin_ok = origin_ok && solver::solve_a_star(ctx, 0.0) == 1.0;
      for (double r : kGridRadii) {
        const objective::ObjectiveParams params{ctx, r};
        const double a = solver::solve_a_star(ctx, r);
        residual.update(std::abs(objective::big_f(params, a)), cell(n, p, r));
        slopes_negative = slopes_negative && objective::dF_da(params, a) < 0.0;
        const auto range = kernel::kernel_range(ctx, r);
        const auto best = golden_section_minimize_by(
            [&](double x, double y) {
              return objective::phi_q_difference(params, x, y) < 0.0;
            },
            range.min, range.max, 1e-13);
        golden.update(std::abs(best.x - a), cell(n, p, r));
      }
    }
  }
  return {residual.value <= 1e-9 && golden.value <= 1e-7 && slopes_negative &&
              origin_ok,
          format("max |F(r, a*)| %.3g at %s; max |golden - root| %.3g at %s; "
                 "dF/da(a*) %s; a*(0) %s",
                 residual.value, residual.where.c_str(), golden.value,
                 golden.where.c_str(), slopes_negative ? "< 0" : "NOT < 0",
                 origin_ok ? "= 1" : "!= 1")};
}

Outcome sharpness() {
  Worst gap;
  std::vector<double> exponents(kInteriorExponents.begin(),
                                kInteriorExponents.end());
  exponents.push_back(kInf);
  for (int n : kDimensions) {
    for (double p : exponents) {
      for (double r : kGridRadii) {
        const auto report = verify::verify_sharpness(BallContext(n, p), r);
        gap.update(report.relative_gap, cell(n, p, r));
      }
    }
  }
  return {gap.value <= 1e-6, format("max relative gap %.3g at %s", gap.value,
                                    gap.where.c_str())};
}

Outcome gradient_constant() {
  Worst extremal;
  Worst random;
  int violations = 0;
  for (int n : kDimensions) {
    for (double p : {1.5, 2.0, 3.0, 5.0, kInf}) {
      const BallContext ctx(n, p);
      const double constant = solver::grad_constant(ctx);
      const auto phi = verify::gradient_extremal(ctx);
      const double ratio = verify::grad_at_origin(phi) / phi.norm();
      extremal.update(std::abs(ratio - constant) / constant, cell(n, p, 0.0));
      const auto report = verify::random_gradient_check(ctx, 1000, 42);
      violations += report.violations;
      random.update(report.max_ratio, cell(n, p, 0.0));
    }
  }
  Worst fd;
  for (int n : {3, 4}) {
    for (double p : {2.0, 3.0, kInf}) {
      const BallContext ctx(n, p);
      const double constant = solver::grad_constant(ctx);
      const double quotient = solver::gp_derivative_at_zero(ctx, 1e-4);
      fd.update(std::abs(quotient - constant) / constant, cell(n, p, 1e-4));
    }
  }
  return {extremal.value <= 1e-9 && fd.value <= 1e-2 && violations == 0,
          format("extremal ratio max rel. dev %.3g at %s; G_p(h)/h max rel. "
                 "dev %.3g at %s; random: %d violations in 15000, max ratio "
                 "%.12g",
                 extremal.value, extremal.where.c_str(), fd.value,
                 fd.where.c_str(), violations, random.value)};
}

Outcome bound_property() {
  int violations = 0;
  int draws = 0;
  Worst ratio;
  std::vector<double> exponents(kInteriorExponents.begin(),
                                kInteriorExponents.end());
  exponents.push_back(kInf);
  for (std::uint64_t seed : {7, 42}) {
    for (int n : kDimensions) {
      for (double p : exponents) {
        const auto reports = verify::random_bound_check(
            BallContext(n, p), kGridRadii, 1000, seed);
        for (std::size_t j = 0; j < reports.size(); ++j) {
          violations += reports[j].violations;
          draws += reports[j].count;
          ratio.update(reports[j].max_ratio,
                       cell(n, p, kGridRadii[j]) + format(" seed=%d", int(seed)));
        }
      }
    }
  }
  return {violations == 0,
          format("%d violations in %d checks; max ratio %.12g at %s",
                 violations, draws, ratio.value, ratio.where.c_str())};
}

Outcome monotonicity() {
  std::vector<double> radii;
  for (int k = 0; k <= 19; ++k) radii.push_back(0.05 * k);
  int series = 0;
  std::string broken;
  for (int n : kDimensions) {
    for (double p : {1.0, 1.5, 2.0, 3.0, 5.0, kInf}) {
      const auto results = solver::g_p_grid(BallContext(n, p), radii);
      ++series;
      for (std::size_t k = 1; k < results.size(); ++k) {
        if (!(results[k].g_value > results[k - 1].g_value) && broken.empty()) {
          broken = cell(n, p, radii[k]);
        }
      }
    }
  }
  bool in_range = true;
  double worst_near_one = 1.0;
  for (int n : kDimensions) {
    for (double r : {0.0, 0.5, 0.9, 0.99, 0.999}) {
      const double g = solver::g_inf_closed(n, r).g_value;
      in_range = in_range && g >= 0.0 && g < 1.0;
    }
    worst_near_one =
        std::min(worst_near_one, solver::g_inf_closed(n, 0.999).g_value);
  }
  const bool passed = broken.empty() && in_range && worst_near_one > 0.99;
  return {passed,
          format("%d series strictly increasing on r=0..0.95%s; G_inf in "
                 "[0, 1): %s; min over n of G_inf(0.999) = %.15g",
                 series, broken.empty() ? "" : (", broken at " + broken).c_str(),
                 in_range ? "yes" : "NO", worst_near_one)};
}

Outcome l2_gradient() {
  std::string detail;
  for (int n : kDimensions) {
    if (!detail.empty()) detail += " | ";
    detail += verify::l2_gradient_report(n, 1000, 42).summary();
  }
  return {true, detail};
}

struct CriterionDef {
  const char* title;
  double budget;
  Outcome (*run)();
};

constexpr std::array<CriterionDef, kCriterionCount> kCriteria{{
    {"p=inf closed form against elementary forms", 1.0, closed_form_infinity},
    {"p=2 closed form and a*=1", 5.0, closed_form_two},
    {"p=1 closed form and cap sequence", 5.0, closed_form_one},
    {"stationarity of a* and golden-section agreement", 0.0, stationarity},
    {"sharpness of the extremal data", 30.0, sharpness},
    {"gradient constant", 0.0, gradient_constant},
    {"random bound property", 60.0, bound_property},
    {"monotonicity in r", 0.0, monotonicity},
    {"L2 gradient constant report", 0.0, l2_gradient},
}};

}  // namespace

CriterionResult run_criterion(int id) {
  if (id < 1 || id > kCriterionCount) {
    return {id, "unknown", false, "no such criterion", 0.0, 0.0};
  }
  const CriterionDef& def = kCriteria[id - 1];
  const auto start = std::chrono::steady_clock::now();
  Outcome outcome{false, ""};
  try {
    outcome = def.run();
  } catch (const std::exception& e) {
    outcome = {false, std::string("error: ") + e.what()};
  }
  const double seconds = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();
  bool passed = outcome.passed;
  if (def.budget > 0.0 && seconds > def.budget) {
    passed = false;
    outcome.detail += format("; runtime %.2f s over the %.0f s budget",
                             seconds, def.budget);
  }
  return {id, def.title, passed, outcome.detail, seconds, def.budget};
}

std::vector<CriterionResult> run_all(
    const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> results;
  for (int id = 1; id <= kCriterionCount; ++id) {
    results.push_back(run_criterion(id));
    if (on_result) on_result(results.back());
  }
  return results;
}

std::string format_line(const CriterionResult& result, bool with_timing) {
  std::string line = format("criterion %d %s %s: ", result.id,
                            result.passed ? "PASS" : "FAIL",
                            result.title.c_str());
  line += result.detail;
  if (with_timing) {
    line += result.budget_seconds > 0.0
                ? format(" [%.2f s, budget %.0f s]", result.seconds,
                         result.budget_seconds)
                : format(" [%.2f s]", result.seconds);
  }
  return line;
}

}  // namespace hypschwarz::acceptance
