// Command-line front end over the C API.

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "hypschwarz.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitViolation = 2;
constexpr int kDefaultOrder = 128;
constexpr double kSharpnessTolerance = 1e-6;
constexpr double kMonotoneSlack = 1e-9;

struct Null {};
using Cell = std::variant<Null, double, long long, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const Cell& cell) {
  struct Visitor {
    std::string operator()(Null) const { return ""; }
    std::string operator()(double x) const {
      return std::isnan(x) ? "" : number(x);
    }
    std::string operator()(long long x) const { return std::to_string(x); }
    std::string operator()(bool x) const { return x ? "true" : "false"; }
    std::string operator()(const std::string& s) const {
      if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
      std::string quoted = "\"";
      for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
      }
      return quoted + "\"";
    }
  };
  return std::visit(Visitor{}, cell);
}

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (unsigned char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\r':
        out += "\\r";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out + "\"";
}

std::string json_value(const Cell& cell) {
  struct Visitor {
    std::string operator()(Null) const { return "null"; }
    std::string operator()(double x) const {
      if (std::isnan(x)) return "null";
      if (std::isinf(x)) return json_string(number(x));
      return number(x);
    }
    std::string operator()(long long x) const { return std::to_string(x); }
    std::string operator()(bool x) const { return x ? "true" : "false"; }
    std::string operator()(const std::string& s) const { return json_string(s); }
  };
  return std::visit(Visitor{}, cell);
}

std::string render(const Table& table, const std::string& format) {
  std::string out;
  if (format == "json") {
    out += "[";
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      out += i == 0 ? "\n  {" : ",\n  {";
      for (std::size_t j = 0; j < table.columns.size(); ++j) {
        if (j > 0) out += ",";
        out += json_string(table.columns[j]) + ":" + json_value(table.rows[i][j]);
      }
      out += "}";
    }
    out += table.rows.empty() ? "]\n" : "\n]\n";
    return out;
  }
  for (std::size_t j = 0; j < table.columns.size(); ++j) {
    if (j > 0) out += ",";
    out += table.columns[j];
  }
  out += "\n";
  for (const auto& row : table.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j > 0) out += ",";
      out += csv_field(row[j]);
    }
    out += "\n";
  }
  return out;
}

// Library failure carrying the status and message.
struct Failure {
  hs_status status;
  std::string message;
};

void check(hs_status status) {
  if (status != HS_OK) throw Failure{status, hs_last_error()};
}

struct ContextDeleter {
  void operator()(hs_context* ctx) const { hs_context_destroy(ctx); }
};
using Context = std::unique_ptr<hs_context, ContextDeleter>;

struct Config {
  int n = 3;
  std::string p_text = "2";
  double r = 0.0;
  double r_min = 0.0;
  double r_max = 0.9;
  int steps = 10;
  int order = kDefaultOrder;
  int count = 1000;
  std::uint64_t seed = 42;
  int i_max = 64;
  double h = 1e-4;
  std::string format = "csv";
  std::string output;

  CLI::Option* r_option = nullptr;

  double p() const {
    if (p_text == "inf") return std::numeric_limits<double>::infinity();
    return std::stod(p_text);
  }

  std::vector<double> radii() const {
    if (r_option && r_option->count() > 0) return {r};
    const double lo = std::min(r_min, r_max);
    const double hi = std::max(r_min, r_max);
    if (steps == 1) return {lo};
    std::vector<double> out;
    for (int i = 0; i < steps; ++i) {
      out.push_back(lo + (hi - lo) * i / (steps - 1));
    }
    return out;
  }

  Context context() const {
    hs_context* raw = nullptr;
    check(hs_context_create(n, p(), order, &raw));
    return Context(raw);
  }
};

const char* method_name(hs_method method) {
  switch (method) {
    case HS_METHOD_NUMERIC:
      return "numeric";
    case HS_METHOD_CLOSED_P1:
      return "closed_p1";
    case HS_METHOD_CLOSED_P2:
      return "closed_p2";
    case HS_METHOD_CLOSED_PINF:
      return "closed_pinf";
  }
  return "unknown";
}

int run_gp(const Config& cfg, Table& table) {
  const auto ctx = cfg.context();
  const auto radii = cfg.radii();
  std::vector<hs_gp_result> results(radii.size());
  check(hs_gp_grid(ctx.get(), radii.data(), radii.size(), results.data()));
  table.columns = {"r", "a_star", "g_value", "method", "est_error"};
  for (const auto& res : results) {
    table.rows.push_back({res.r, res.a_star, res.g_value,
                          std::string(method_name(res.method)), res.est_error});
  }
  return kExitOk;
}

int run_astar(const Config& cfg, Table& table) {
  const auto ctx = cfg.context();
  table.columns = {"r", "a_star"};
  for (double r : cfg.radii()) {
    double a = 0.0;
    check(hs_a_star(ctx.get(), r, &a));
    table.rows.push_back({r, a});
  }
  return kExitOk;
}

int run_uh(const Config& cfg, Table& table) {
  table.columns = {"r", "u_h", "elementary"};
  for (double r : cfg.radii()) {
    double closed = 0.0;
    double elementary = 0.0;
    check(hs_u_h(cfg.n, r, &closed, &elementary));
    table.rows.push_back(
        {r, closed, std::isnan(elementary) ? Cell(Null{}) : Cell(elementary)});
  }
  return kExitOk;
}

int run_grad(const Config& cfg, Table& table) {
  const auto ctx = cfg.context();
  double constant = 0.0;
  check(hs_grad_constant(ctx.get(), &constant));
  Cell ratio = Null{};
  if (hs_context_p(ctx.get()) > 1.0) {
    double value = 0.0;
    check(hs_grad_extremal_ratio(ctx.get(), &value));
    ratio = value;
  }
  double quotient = 0.0;
  check(hs_gp_derivative_at_zero(ctx.get(), cfg.h, &quotient));
  table.columns = {"n",  "p",         "q", "grad_constant", "extremal_ratio",
                   "fd_quotient", "h"};
  table.rows.push_back({static_cast<long long>(cfg.n), hs_context_p(ctx.get()),
                        hs_context_q(ctx.get()), constant, ratio, quotient,
                        cfg.h});
  return kExitOk;
}

int run_verify_sharpness(const Config& cfg, Table& table) {
  const auto ctx = cfg.context();
  table.columns = {"r", "g_bound", "attained", "u_at_zero", "relative_gap",
                   "pass"};
  int status = kExitOk;
  for (double r : cfg.radii()) {
    hs_sharpness_report rep{};
    check(hs_verify_sharpness(ctx.get(), r, &rep));
    const bool pass = rep.relative_gap <= kSharpnessTolerance;
    if (!pass) status = kExitViolation;
    table.rows.push_back(
        {rep.r, rep.g_bound, rep.attained, rep.u_at_zero, rep.relative_gap, pass});
  }
  return status;
}

int run_verify_bound(const Config& cfg, Table& table) {
  const auto ctx = cfg.context();
  table.columns = {"n", "p", "r", "count", "seed", "violations", "max_ratio"};
  int status = kExitOk;
  for (double r : cfg.radii()) {
    hs_ratio_report rep{};
    check(hs_random_bound_check(ctx.get(), r, cfg.count, cfg.seed, &rep));
    if (rep.violations > 0) status = kExitViolation;
    table.rows.push_back({static_cast<long long>(cfg.n), hs_context_p(ctx.get()),
                          r, static_cast<long long>(rep.count),
                          static_cast<long long>(cfg.seed),
                          static_cast<long long>(rep.violations), rep.max_ratio});
  }
  return status;
}

int run_verify_capseq(const Config& cfg, Table& table) {
  hs_context* raw = nullptr;
  check(hs_context_create(cfg.n, 1.0, cfg.order, &raw));
  const Context ctx(raw);
  hs_gp_result g1{};
  check(hs_gp(ctx.get(), cfg.r, &g1));
  table.columns = {"i", "u_i", "g_1", "relative_gap"};
  int status = kExitOk;
  double previous = -std::numeric_limits<double>::infinity();
  for (int i = 2; i <= cfg.i_max; i *= 2) {
    double u = 0.0;
    check(hs_minimizing_sequence_p1(cfg.n, cfg.r, i, cfg.order, &u));
    if (u < previous - kMonotoneSlack ||
        u > g1.g_value * (1.0 + kMonotoneSlack)) {
      status = kExitViolation;
    }
    previous = u;
    table.rows.push_back({static_cast<long long>(i), u, g1.g_value,
                          (g1.g_value - u) / g1.g_value});
  }
  return status;
}

int run_check(std::ostream& out) {
  int failures = 0;
  check(hs_run_acceptance(
      [](int id, int passed, const char* title, const char* detail, double,
         void* user) {
        auto& os = *static_cast<std::ostream*>(user);
        os << "criterion " << id << ' ' << (passed ? "PASS" : "FAIL") << ' '
           << title << ": " << detail << '\n';
        os.flush();
      },
      &out, &failures));
  out << (9 - failures) << "/9 criteria passed\n";
  return failures == 0 ? kExitOk : kExitViolation;
}

int default_order() {
  const char* env = std::getenv("HYPSCHWARZ_ORDER");
  if (!env || !*env) return kDefaultOrder;
  char* end = nullptr;
  errno = 0;
  const long value = std::strtol(env, &end, 10);
  if (errno != 0 || *end != '\0' || value < 2 || value > 1 << 16) {
    std::cerr << "warning: ignoring invalid HYPSCHWARZ_ORDER=" << env << '\n';
    return kDefaultOrder;
  }
  return static_cast<int>(value);
}

const CLI::Validator kExponent(
    [](std::string& s) -> std::string {
      if (s == "inf") return {};
      try {
        std::size_t used = 0;
        const double p = std::stod(s, &used);
        if (used != s.size()) return "expected a number or inf, got " + s;
        if (!(p >= 1.0) || !std::isfinite(p)) return "must be >= 1 or inf";
      } catch (const std::exception&) {
        return "expected a number or inf, got " + s;
      }
      return {};
    },
    "P>=1|inf", "exponent");

const CLI::Validator kRadius(
    [](std::string& s) -> std::string {
      try {
        const double r = std::stod(s);
        if (!(r >= 0.0 && r < 1.0)) return "must satisfy 0 <= r < 1";
      } catch (const std::exception&) {
        return "expected a number, got " + s;
      }
      return {};
    },
    "0<=R<1", "radius");

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sharp Schwarz-type bounds for hyperbolic harmonic maps on the unit ball"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(hs_version()));

  Config cfg;
  cfg.order = default_order();

  auto add_common = [&](CLI::App* sub, bool wants_p, bool wants_range) {
    sub->add_option("--n", cfg.n, "ball dimension (>= 3)")
        ->check(CLI::Range(3, 1 << 20))
        ->capture_default_str();
    if (wants_p) {
      sub->add_option("--p", cfg.p_text, "exponent p >= 1, or inf")
          ->check(kExponent)
          ->capture_default_str();
    }
    sub->add_option("--order", cfg.order,
                    "quadrature order (default 128, or HYPSCHWARZ_ORDER)")
        ->check(CLI::Range(2, 1 << 16));
    sub->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_option("--output", cfg.output, "write to this file instead of stdout");
    if (wants_range) {
      cfg.r_option = nullptr;
      auto* r = sub->add_option("--r", cfg.r, "single radius")->check(kRadius);
      auto* r_min = sub->add_option("--r-min", cfg.r_min, "first radius of the grid")
                        ->check(kRadius)
                        ->capture_default_str();
      auto* r_max = sub->add_option("--r-max", cfg.r_max, "last radius of the grid")
                        ->check(kRadius)
                        ->capture_default_str();
      auto* steps = sub->add_option("--steps", cfg.steps, "number of grid points")
                        ->check(CLI::Range(1, 1 << 20))
                        ->capture_default_str();
      r->excludes(r_min)->excludes(r_max)->excludes(steps);
      return r;
    }
    return static_cast<CLI::Option*>(nullptr);
  };

  struct Command {
    CLI::App* app;
    CLI::Option* r;
    int (*run)(const Config&, Table&);
  };
  std::vector<Command> commands;
  auto add = [&](const char* name, const char* help, bool wants_p,
                 int (*run)(const Config&, Table&)) {
    CLI::App* sub = app.add_subcommand(name, help);
    CLI::Option* r = add_common(sub, wants_p, true);
    commands.push_back({sub, r, run});
    return sub;
  };

  add("gp", "tabulate G_p(r) and the optimal shift", true, run_gp);
  add("astar", "optimal shift a*(r)", true, run_astar);
  add("uh", "U_h(r e_n), closed and elementary forms", false, run_uh);
  add("verify-sharpness", "compare the extremal datum with the bound", true,
      run_verify_sharpness);
  CLI::App* bound = add("verify-bound", "randomized check of the bound", true,
                        run_verify_bound);
  bound->add_option("--count", cfg.count, "random data per radius")
      ->check(CLI::Range(1, 1 << 24))
      ->capture_default_str();
  bound->add_option("--seed", cfg.seed, "generator seed")->capture_default_str();

  CLI::App* grad = app.add_subcommand("grad", "sharp gradient constant at the origin");
  grad->set_help_flag("--help", "Print this help message and exit");
  add_common(grad, true, false);
  grad->add_option("--h", cfg.h, "step of the difference quotient G_p(h)/h")
      ->check(CLI::Range(1e-12, 1e-2))
      ->capture_default_str();

  CLI::App* capseq = app.add_subcommand("verify-capseq", "p = 1 cap sequence toward G_1(r)");
  add_common(capseq, false, false);
  capseq->add_option("--r", cfg.r, "radius (0 < r < 1)")->check(kRadius)->required();
  capseq->add_option("--i-max", cfg.i_max, "largest cap index (doubling from 2)")
      ->check(CLI::Range(2, 1 << 20))
      ->capture_default_str();

  CLI::App* check_cmd =
      app.add_subcommand("check", "run the acceptance suite (exit 2 on any failure)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!cfg.output.empty()) {
    file.open(cfg.output, std::ios::binary);
    if (!file) {
      std::cerr << "error: --output: cannot open " << cfg.output << '\n';
      return kExitError;
    }
    out = &file;
  }

  try {
    if (check_cmd->parsed()) return run_check(*out);

    Table table;
    int status = kExitOk;
    if (grad->parsed()) {
      status = run_grad(cfg, table);
    } else if (capseq->parsed()) {
      if (!(cfg.r > 0.0)) {
        std::cerr << "error: --r: must satisfy 0 < r < 1\n";
        return kExitError;
      }
      status = run_verify_capseq(cfg, table);
    } else {
      for (const auto& cmd : commands) {
        if (!cmd.app->parsed()) continue;
        cfg.r_option = cmd.r;
        status = cmd.run(cfg, table);
      }
    }
    *out << render(table, cfg.format);
    out->flush();
    return status;
  } catch (const Failure& f) {
    std::cerr << "error: " << hs_status_string(f.status) << ": " << f.message
              << '\n';
    return kExitError;
  }
}
